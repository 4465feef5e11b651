#include "isodoublet/radial.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isodoublet {

RadialProfile::RadialProfile(Fn value, Fn derivative, double scale, std::string name)
    : value_(std::move(value)), derivative_(std::move(derivative)), scale_(scale), name_(std::move(name)) {
  if (!value_) throw std::invalid_argument("RadialProfile: value function is empty");
  if (!(scale_ > 0.0)) throw std::invalid_argument("RadialProfile: scale must be positive");
}

cd RadialProfile::derivative(double r) const {
  if (derivative_) return derivative_(r);
  const double h = fd_step();
  if (r < 2.0 * h)
    throw std::domain_error("RadialProfile: radial node " + std::to_string(r) +
                            " too close to the origin for the 5-point stencil");
  return (value_(r - 2 * h) - 8.0 * value_(r - h) + 8.0 * value_(r + h) - value_(r + 2 * h)) / (12.0 * h);
}

ProfilePtr make_profile(RadialProfile::Fn value, RadialProfile::Fn derivative, double scale,
                        std::string name) {
  return std::make_shared<const RadialProfile>(std::move(value), std::move(derivative), scale,
                                               std::move(name));
}

ProfilePtr exp_poly_profile(int power, double rate, double norm2) {
  if (power < 0 || !(rate > 0.0) || !(norm2 > 0.0))
    throw std::invalid_argument("exp_poly_profile: need power >= 0, rate > 0, norm2 > 0");
  // int_0^inf r^{2p} e^{-2 a r} dr = (2p)! / (2a)^{2p+1}
  const double integral = std::tgamma(2.0 * power + 1.0) / std::pow(2.0 * rate, 2.0 * power + 1.0);
  const double c = std::sqrt(norm2 / integral);
  auto value = [=](double r) -> cd { return c * std::pow(r, power) * std::exp(-rate * r); };
  auto deriv = [=](double r) -> cd {
    const double e = std::exp(-rate * r);
    const double lead = power == 0 ? 0.0 : power * std::pow(r, power - 1);
    return c * (lead - rate * std::pow(r, power)) * e;
  };
  return make_profile(value, deriv, 1.0 / rate,
                      "r^" + std::to_string(power) + " exp(-" + std::to_string(rate) + " r)");
}

ProfilePtr constant_profile(cd value) {
  return make_profile([value](double) { return value; }, [](double) { return cd{}; }, 1.0, "const");
}

namespace {

struct SplineDeleter {
  void operator()(gsl_spline* s) const { gsl_spline_free(s); }
};
using Spline = std::unique_ptr<gsl_spline, SplineDeleter>;

Spline make_spline(const std::vector<double>& x, const std::vector<double>& y) {
  Spline s(gsl_spline_alloc(gsl_interp_cspline, x.size()));
  if (!s) throw std::runtime_error("tabulated_profile: spline allocation failed");
  if (gsl_spline_init(s.get(), x.data(), y.data(), x.size()) != GSL_SUCCESS)
    throw std::invalid_argument("tabulated_profile: spline initialisation failed");
  return s;
}

struct TabulatedData {
  std::vector<double> r;
  Spline re, im;

  cd value(double x) const {
    x = std::clamp(x, r.front(), r.back());
    // A null accelerator keeps evaluation reentrant.
    return {gsl_spline_eval(re.get(), x, nullptr), gsl_spline_eval(im.get(), x, nullptr)};
  }
  cd deriv(double x) const {
    if (x < r.front() || x > r.back()) return {};
    return {gsl_spline_eval_deriv(re.get(), x, nullptr), gsl_spline_eval_deriv(im.get(), x, nullptr)};
  }
};

}  // namespace

ProfilePtr tabulated_profile(std::vector<double> r, std::vector<cd> values, std::string name) {
  if (r.size() != values.size() || r.size() < 3)
    throw std::invalid_argument("tabulated_profile: need >= 3 knots and matching sizes");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
      throw std::invalid_argument("tabulated_profile: non-finite knot");
    if (i > 0 && !(r[i] > r[i - 1]))
      throw std::invalid_argument("tabulated_profile: r must be strictly increasing");
  }
  gsl_set_error_handler_off();
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  auto data = std::make_shared<TabulatedData>();
  data->re = make_spline(r, re);
  data->im = make_spline(r, im);
  data->r = std::move(r);
  const double scale = (data->r.back() - data->r.front()) / static_cast<double>(data->r.size());
  return make_profile([data](double x) { return data->value(x); },
                      [data](double x) { return data->deriv(x); }, scale,
                      name.empty() ? "table" : std::move(name));
}

ProfilePtr multiply(ProfilePtr p, RadialProfile::Fn fn, RadialProfile::Fn fn_derivative) {
  if (!p || !fn) throw std::invalid_argument("multiply: empty profile or function");
  RadialProfile::Fn deriv;
  if (fn_derivative && p->has_analytic_derivative())
    deriv = [p, fn, fn_derivative](double r) { return fn_derivative(r) * (*p)(r) + fn(r) * p->derivative(r); };
  return make_profile([p, fn](double r) { return fn(r) * (*p)(r); }, deriv, p->fd_step() * 1e4,
                      "(f * " + p->name() + ")");
}

ProfilePtr derivative_of(ProfilePtr p) {
  if (!p) throw std::invalid_argument("derivative_of: empty profile");
  return make_profile([p](double r) { return p->derivative(r); }, {}, p->fd_step() * 1e4,
                      "d/dr " + p->name());
}

}  // namespace isodoublet
