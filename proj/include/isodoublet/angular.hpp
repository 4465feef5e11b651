#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "isodoublet/linalg.hpp"

namespace isodoublet {

/// Integer or half-integer number stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int n) : twice_(2 * n) {}  // NOLINT: integers convert implicitly

  static constexpr HalfInt from_twice(int t) {
    HalfInt h;
    h.twice_ = t;
    return h;
  }
  static constexpr HalfInt half(int numerator) { return from_twice(numerator); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// Valid only when is_integer().
  constexpr int as_int() const { return twice_ / 2; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const;

 private:
  int twice_ = 0;
};

/// Labels one Wigner function D^j_{m, sigma}.
struct AngularIndex {
  HalfInt j;
  HalfInt m;
  HalfInt sigma;

  /// |m| <= j, |sigma| <= j, j - m and j - sigma integral.
  bool valid() const noexcept;
  /// Throws std::domain_error when !valid().
  void validate() const;

  auto operator<=>(const AngularIndex&) const = default;
};

/// Largest supported 2j. The factorial sum loses digits to cancellation well
/// before this; results are exact to roundoff for j <= 10.
inline constexpr int kMaxTwiceJ = 40;

/// d^j_{m,sigma}(beta) in the convention
/// D^j_{m,sigma}(alpha, beta, gamma) = e^{-i m alpha} d^j_{m,sigma}(beta) e^{-i sigma gamma},
/// the one in which
///   d/dbeta D_{m,s} = +1/2 sqrt((j+s)(j-s+1)) e^{-i gamma} D_{m,s-1}
///                     -1/2 sqrt((j-s)(j+s+1)) e^{+i gamma} D_{m,s+1}
///   (m - s cos b)/sin b D_{m,s} = -1/2 sqrt((j+s)(j-s+1)) e^{-i gamma} D_{m,s-1}
///                                 -1/2 sqrt((j-s)(j+s+1)) e^{+i gamma} D_{m,s+1}
/// hold with these signs. Evaluated by the explicit factorial sum.
double wigner_d(const AngularIndex& idx, double beta);

/// Analytic beta-derivative of the factorial sum.
double wigner_d_derivative(const AngularIndex& idx, double beta);

/// D^j_{m,sigma}(phi, theta, 0) = e^{-i m phi} d^j_{m,sigma}(theta).
cd wigner_D(const AngularIndex& idx, double phi, double theta);

/// Coefficients of the two recursions as printed: slot 0/1 are the
/// (s-1)/(s+1) coefficients of the derivative relation, 2/3 of the ratio
/// relation. Flipping one models a corrupted convention.
struct RecursionSigns {
  double derivative_lower = +1.0;
  double derivative_upper = -1.0;
  double ratio_lower = -1.0;
  double ratio_upper = -1.0;
};

struct RecursionResiduals {
  double derivative = 0.0;
  double ratio = 0.0;
};

/// |LHS - RHS| of both recursions at gamma = 0. theta must be strictly inside
/// (0, pi); the poles throw std::domain_error.
RecursionResiduals recursion_residuals(const AngularIndex& idx, double theta,
                                       const RecursionSigns& signs = {});

/// One term sigma' -> coefficient of D_{m, sigma'}.
struct SigmaTerm {
  HalfInt sigma;
  double coef;
};

/// d/dtheta D_{m,s} expanded on D_{m,s-1}, D_{m,s+1}.
std::array<SigmaTerm, 2> derivative_expansion(HalfInt j, HalfInt sigma);
/// (m - s cos theta)/sin theta D_{m,s} expanded on D_{m,s-1}, D_{m,s+1}.
std::array<SigmaTerm, 2> ratio_expansion(HalfInt j, HalfInt sigma);

struct PolarPoint {
  double theta;
  double phi;
};

/// Antipodal point x -> -x with phi reduced to [0, 2 pi).
PolarPoint parity_point(double theta, double phi);

/// Antipodal point with phi + pi left unreduced. Fields built on the spherical
/// spinor frame are double-valued in phi; this is the branch every discrete
/// operator in the library uses.
PolarPoint antipode(double theta, double phi);

/// D^j_{m,s}(antipode(x)) = antipodal_phase(j, m) * D^j_{m,-s}(x), exactly.
cd antipodal_phase(HalfInt j, HalfInt m);

/// Gauss-Legendre in cos(theta) times the uniform trapezoid rule in phi.
struct SphereGrid {
  int j_max = 0;
  std::vector<double> theta;         // ascending in cos(theta), none at the poles
  std::vector<double> theta_weight;  // Gauss-Legendre weights in cos(theta)
  std::vector<double> phi;           // phi_k = 2 pi k / n_phi
  double phi_weight = 0.0;           // 2 pi / n_phi

  std::size_t n_theta() const { return theta.size(); }
  std::size_t n_phi() const { return phi.size(); }
  std::size_t size() const { return n_theta() * n_phi(); }

  /// Flattened node order is theta-major: index = i_theta * n_phi + k_phi.
  PolarPoint node(std::size_t index) const;
  double weight(std::size_t index) const;
  double total_weight() const;

  struct AntipodeNode {
    std::size_t index;
    bool wrapped;  // phi + pi passed 2 pi
  };
  AntipodeNode antipode_node(std::size_t index) const;
};

/// Exact (to roundoff) for every integrand D*_{m s}^{j} D^{j'}_{m' s} x
/// (polynomial of degree <= 1 in the Cartesian coordinates) with j, j' <= j_max.
/// n_theta = 2 j_max + 2, n_phi = 4 j_max + 4 (even, so antipodes are nodes).
SphereGrid make_sphere_grid(int j_max);

}  // namespace isodoublet
