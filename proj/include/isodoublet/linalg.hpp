#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace isodoublet {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat8 = Eigen::Matrix<cd, 8, 8>;

/// Eight complex components of an isodoublet of bispinors.
/// Component index is `iso * 4 + slot`; iso 0 is T_{+1/2}, iso 1 is T_{-1/2}.
using Spinor8 = Eigen::Matrix<cd, 8, 1>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cd kI{0.0, 1.0};

namespace pauli {
Mat2 identity();
Mat2 sigma1();
Mat2 sigma2();
Mat2 sigma3();
/// sigma . n for the radial unit vector n(theta, phi).
Mat2 radial(double theta, double phi);
}  // namespace pauli

/// Dirac matrices in the chiral basis:
/// gamma^0 = [[0, I], [I, 0]], gamma^k = [[0, -sigma_k], [sigma_k, 0]].
namespace gamma {
Mat4 g0();
Mat4 g1();
Mat4 g2();
Mat4 g3();
/// i gamma^0 gamma^1 gamma^2 gamma^3 = diag(1, 1, -1, -1) in this basis.
Mat4 g5();
/// i sigma^{12} = diag(1/2, -1/2, 1/2, -1/2).
Mat4 i_sigma12();
}  // namespace gamma

Mat8 kron(const Mat2& iso, const Mat4& bispinor);

/// exp(z * sigma.n) for a unit vector n, using (sigma.n)^2 = I.
Mat2 exp_sigma_n(cd z, double theta, double phi);

/// Max-abs entry difference.
template <class A, class B>
double max_abs_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace isodoublet
