#pragma once

// Test-only generators and independent oracles. Nothing here calls the
// library routine it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "isodoublet/field.hpp"
#include "isodoublet/linalg.hpp"

namespace testing {

using isodoublet::cd;
using isodoublet::kPi;

using PointwiseFn = std::function<isodoublet::Spinor8(double, double, double)>;

/// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  int sign() { return integer(0, 1) == 0 ? 1 : -1; }
  cd complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }
  /// Real, imaginary or complex with equal odds; |Im| kept moderate.
  cd A() {
    switch (integer(0, 2)) {
      case 0: return {uniform(-3.0, 3.0), 0.0};
      case 1: return {0.0, uniform(-1.0, 1.0)};
      default: return {uniform(-3.0, 3.0), uniform(-1.0, 1.0)};
    }
  }
  double theta() { return uniform(0.05, kPi - 0.05); }
  double phi() { return uniform(0.0, 2.0 * kPi); }
  double r() { return uniform(0.3, 4.0); }

 private:
  std::mt19937_64 rng_;
};

/// d^j_{m,s}(beta) = <j m| exp(-i beta J_y) |j s>, by matrix exponential of
/// the (2j+1)-dimensional J_y built from ladder operators. twice_* are 2j, 2m, 2s.
inline double wigner_d_oracle(int twice_j, int twice_m, int twice_s, double beta) {
  const int n = twice_j + 1;
  const double j = 0.5 * twice_j;
  Eigen::MatrixXcd jy = Eigen::MatrixXcd::Zero(n, n);
  // basis index k <-> m = j - k
  for (int k = 0; k + 1 < n; ++k) {
    const double m = j - (k + 1);  // J+ |m> = sqrt((j-m)(j+m+1)) |m+1>
    const double c = std::sqrt((j - m) * (j + m + 1.0));
    // J_y = (J+ - J-)/(2i)
    jy(k, k + 1) += c / cd(0.0, 2.0);
    jy(k + 1, k) -= c / cd(0.0, 2.0);
  }
  const Eigen::MatrixXcd u = (cd(0.0, -beta) * jy).exp();
  const int row = (twice_j - twice_m) / 2, col = (twice_j - twice_s) / 2;
  return u(row, col).real();
}

/// Per-slot helicity label of a well-formed doublet: i sigma12 + t3.
inline double doublet_lambda(int iso, int slot) {
  static constexpr double s12[4] = {0.5, -0.5, 0.5, -0.5};
  return s12[slot] + (iso == 0 ? 0.5 : -0.5);
}

/// Abelian slot label: i sigma12 - eg.
inline double abelian_lambda(int slot, double eg) {
  static constexpr double s12[4] = {0.5, -0.5, 0.5, -0.5};
  return s12[slot] - eg;
}

struct Derivs {
  isodoublet::Spinor8 f, t, tt, p, pp;
};

/// Central differences in theta and phi of a pointwise field.
inline Derivs fd_angles(const isodoublet::PointwiseField& f, double r, double theta, double phi, double h = 1e-4) {
  Derivs d;
  d.f = f(r, theta, phi);
  const auto tp = f(r, theta + h, phi), tm = f(r, theta - h, phi);
  const auto pp = f(r, theta, phi + h), pm = f(r, theta, phi - h);
  d.t = (tp - tm) / (2 * h);
  d.tt = (tp - 2.0 * d.f + tm) / (h * h);
  d.p = (pp - pm) / (2 * h);
  d.pp = (pp - 2.0 * d.f + pm) / (h * h);
  return d;
}

/// Casimir of the rotation generators on a slot carrying label lambda (sigma = -lambda):
/// -[d_tt + cot d_t + (d_pp - sigma^2 + 2 i sigma cos d_p) / sin^2].
inline isodoublet::Spinor8 fd_jsquared(const isodoublet::PointwiseField& f, double r, double theta, double phi,
                                       double (*lambda)(int, int)) {
  const Derivs d = fd_angles(f, r, theta, phi);
  const double s = std::sin(theta), c = std::cos(theta);
  isodoublet::Spinor8 out;
  for (int k = 0; k < 8; ++k) {
    const double sigma = -lambda(k / 4, k % 4);
    out(k) = -(d.tt(k) + c / s * d.t(k) +
               (d.pp(k) - sigma * sigma * d.f(k) + cd(0.0, 2.0 * sigma * c) * d.p(k)) / (s * s));
  }
  return out;
}

/// i gamma^0 gamma^3 [i gamma^1 d_theta + gamma^2 (i d_phi + lambda cos)/sin] by differences.
inline isodoublet::Spinor8 fd_K(const isodoublet::PointwiseField& f, double r, double theta, double phi) {
  using namespace isodoublet;
  const Derivs d = fd_angles(f, r, theta, phi);
  const double s = std::sin(theta), c = std::cos(theta);
  Spinor8 x;
  for (int k = 0; k < 8; ++k) x(k) = (cd(0.0, 1.0) * d.p(k) + doublet_lambda(k / 4, k % 4) * c * d.f(k)) / s;
  const Mat2 id = Mat2::Identity();
  const Mat8 sigma_t = kron(id, Mat4(cd(0.0, 1.0) * gamma::g1()));
  const Mat8 sigma_x = kron(id, gamma::g2());
  const Mat8 pre = kron(id, Mat4(cd(0.0, 1.0) * gamma::g0() * gamma::g3()));
  return pre * (sigma_t * d.t + sigma_x * x);
}

/// Brute-force inner product on a grid unrelated to the library's: midpoint
/// in phi, Golub-Welsch Gauss-Legendre in cos theta, composite Simpson in r
/// on [0, rmax] with measure dr (fields carry the factor r).
inline cd brute_inner(const isodoublet::PointwiseField& a, const isodoublet::PointwiseField& b, int n_theta,
                      int n_phi, double rmax, int n_r,
                      const std::function<cd(double, double, double)>& weight = {}) {
  // Golub-Welsch for Legendre nodes.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n_theta, n_theta);
  for (int k = 1; k < n_theta; ++k) jac(k, k - 1) = jac(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  const Eigen::VectorXd x = es.eigenvalues();
  Eigen::VectorXd w(n_theta);
  for (int k = 0; k < n_theta; ++k) w(k) = 2.0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);

  if (n_r % 2 != 0) ++n_r;
  const double hr = rmax / n_r;
  cd sum = 0.0;
  for (int ir = 0; ir <= n_r; ++ir) {
    const double r = ir * hr;
    if (r == 0.0) continue;  // integrands vanish at the origin
    const double wr = hr / 3.0 * (ir == n_r ? 1.0 : (ir % 2 == 1 ? 4.0 : 2.0));
    for (int it = 0; it < n_theta; ++it) {
      const double theta = std::acos(x(it));
      for (int ip = 0; ip < n_phi; ++ip) {
        const double phi = 2.0 * kPi * (ip + 0.5) / n_phi;
        const cd g = weight ? weight(r, theta, phi) : cd(1.0);
        sum += wr * w(it) * (2.0 * kPi / n_phi) * g * a(r, theta, phi).dot(b(r, theta, phi));
      }
    }
  }
  return sum;
}

}  // namespace testing
