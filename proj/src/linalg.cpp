#include "isodoublet/linalg.hpp"

#include <cmath>

namespace isodoublet {

namespace pauli {

Mat2 identity() { return Mat2::Identity(); }

Mat2 sigma1() {
  Mat2 s;
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

Mat2 sigma2() {
  Mat2 s;
  s << 0.0, -kI, kI, 0.0;
  return s;
}

Mat2 sigma3() {
  Mat2 s;
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

Mat2 radial(double theta, double phi) {
  const double st = std::sin(theta);
  return st * std::cos(phi) * sigma1() + st * std::sin(phi) * sigma2() + std::cos(theta) * sigma3();
}

}  // namespace pauli

namespace gamma {

namespace {
Mat4 blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) {
  Mat4 m;
  m.topLeftCorner<2, 2>() = a;
  m.topRightCorner<2, 2>() = b;
  m.bottomLeftCorner<2, 2>() = c;
  m.bottomRightCorner<2, 2>() = d;
  return m;
}
}  // namespace

Mat4 g0() { return blocks(Mat2::Zero(), Mat2::Identity(), Mat2::Identity(), Mat2::Zero()); }
Mat4 g1() { return blocks(Mat2::Zero(), -pauli::sigma1(), pauli::sigma1(), Mat2::Zero()); }
Mat4 g2() { return blocks(Mat2::Zero(), -pauli::sigma2(), pauli::sigma2(), Mat2::Zero()); }
Mat4 g3() { return blocks(Mat2::Zero(), -pauli::sigma3(), pauli::sigma3(), Mat2::Zero()); }
Mat4 g5() { return kI * g0() * g1() * g2() * g3(); }
Mat4 i_sigma12() { return kI * 0.25 * (g1() * g2() - g2() * g1()); }

}  // namespace gamma

Mat8 kron(const Mat2& iso, const Mat4& bispinor) {
  Mat8 out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out.block<4, 4>(4 * a, 4 * b) = iso(a, b) * bispinor;
  return out;
}

Mat2 exp_sigma_n(cd z, double theta, double phi) {
  return std::cosh(z) * pauli::identity() + std::sinh(z) * pauli::radial(theta, phi);
}

}  // namespace isodoublet
