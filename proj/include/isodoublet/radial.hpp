#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "isodoublet/linalg.hpp"

namespace isodoublet {

/// Complex function of r with a derivative. The derivative is analytic when
/// supplied, otherwise a 5-point central difference with h = 1e-4 * scale.
class RadialProfile {
 public:
  using Fn = std::function<cd(double)>;

  RadialProfile(Fn value, Fn derivative = {}, double scale = 1.0, std::string name = {});

  cd operator()(double r) const { return value_(r); }
  /// Throws std::domain_error when the stencil would reach r < 0.
  cd derivative(double r) const;
  bool has_analytic_derivative() const { return static_cast<bool>(derivative_); }
  double fd_step() const { return 1e-4 * scale_; }
  const std::string& name() const { return name_; }

 private:
  Fn value_;
  Fn derivative_;
  double scale_;
  std::string name_;
};

using ProfilePtr = std::shared_ptr<const RadialProfile>;

ProfilePtr make_profile(RadialProfile::Fn value, RadialProfile::Fn derivative = {},
                        double scale = 1.0, std::string name = {});

/// c r^power e^{-rate r}, c > 0 chosen so that the integral of |f|^2 over
/// [0, inf) equals norm2.
ProfilePtr exp_poly_profile(int power, double rate, double norm2);

/// Constant value; derivative 0.
ProfilePtr constant_profile(cd value);

/// Natural cubic spline through (r_i, v_i), real and imaginary parts
/// separately (GSL). Outside [r_0, r_n] the end values are held and the
/// derivative is 0. Needs at least 3 knots with strictly increasing r.
ProfilePtr tabulated_profile(std::vector<double> r, std::vector<cd> values, std::string name = {});

/// fn(r) * p(r), with the product rule for the derivative when both parts
/// are analytic. `fn_derivative` may be empty, in which case the
/// product falls back to finite differences.
ProfilePtr multiply(ProfilePtr p, RadialProfile::Fn fn, RadialProfile::Fn fn_derivative = {});

/// p'(r) as a profile (finite-difference derivative of it, if ever needed).
ProfilePtr derivative_of(ProfilePtr p);

}  // namespace isodoublet
