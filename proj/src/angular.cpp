#include "isodoublet/angular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isodoublet {

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(as_int());
  return std::to_string(twice_) + "/2";
}

bool AngularIndex::valid() const noexcept {
  const int j2 = j.twice(), m2 = m.twice(), s2 = sigma.twice();
  if (j2 < 0 || j2 > kMaxTwiceJ) return false;
  if (std::abs(m2) > j2 || std::abs(s2) > j2) return false;
  return (j2 - m2) % 2 == 0 && (j2 - s2) % 2 == 0;
}

void AngularIndex::validate() const {
  if (!valid())
    throw std::domain_error("invalid angular index (j=" + j.str() + ", m=" + m.str() +
                            ", sigma=" + sigma.str() + ")");
}

namespace {

double factorial(int n) {
  static const auto table = [] {
    std::array<double, kMaxTwiceJ + 2> t{};
    t[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  return table.at(static_cast<std::size_t>(n));
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Both d and its derivative walk the same sum; `derivative` selects which.
double factorial_sum(const AngularIndex& idx, double beta, bool derivative) {
  idx.validate();
  // All quantities below are integers because j - m and j - sigma are.
  const int jm = (idx.j.twice() + idx.m.twice()) / 2;          // j + m
  const int jmm = (idx.j.twice() - idx.m.twice()) / 2;         // j - m
  const int js = (idx.j.twice() + idx.sigma.twice()) / 2;      // j + sigma
  const int jms = (idx.j.twice() - idx.sigma.twice()) / 2;     // j - sigma
  const int m_minus_s = (idx.m.twice() - idx.sigma.twice()) / 2;
  const int two_j = idx.j.twice();

  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  const double prefactor = std::sqrt(factorial(js) * factorial(jms) * factorial(jm) * factorial(jmm));

  const int k_lo = std::max(0, -m_minus_s);
  const int k_hi = std::min(js, jmm);
  double total = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double sign = ((k + m_minus_s) % 2 == 0) ? 1.0 : -1.0;
    const double denom = factorial(js - k) * factorial(k) * factorial(jmm - k) * factorial(k + m_minus_s);
    const int pc = two_j - 2 * k - m_minus_s;  // power of cos(beta/2)
    const int ps = 2 * k + m_minus_s;          // power of sin(beta/2)
    double value;
    if (!derivative) {
      value = ipow(c, pc) * ipow(s, ps);
    } else {
      // d/dbeta c^a s^b = (b c^{a+1} s^{b-1} - a c^{a-1} s^{b+1}) / 2
      value = 0.0;
      if (ps > 0) value += ps * ipow(c, pc + 1) * ipow(s, ps - 1);
      if (pc > 0) value -= pc * ipow(c, pc - 1) * ipow(s, ps + 1);
      value *= 0.5;
    }
    total += sign * value / denom;
  }
  return prefactor * total;
}

// sqrt((j+s)(j-s+1)) and sqrt((j-s)(j+s+1))
double lower_factor(HalfInt j, HalfInt s) {
  return std::sqrt((j.value() + s.value()) * (j.value() - s.value() + 1.0));
}
double upper_factor(HalfInt j, HalfInt s) {
  return std::sqrt((j.value() - s.value()) * (j.value() + s.value() + 1.0));
}

double d_or_zero(HalfInt j, HalfInt m, HalfInt s, double beta) {
  const AngularIndex idx{j, m, s};
  return idx.valid() ? wigner_d(idx, beta) : 0.0;
}

}  // namespace

double wigner_d(const AngularIndex& idx, double beta) { return factorial_sum(idx, beta, false); }

double wigner_d_derivative(const AngularIndex& idx, double beta) {
  return factorial_sum(idx, beta, true);
}

cd wigner_D(const AngularIndex& idx, double phi, double theta) {
  return std::polar(1.0, -idx.m.value() * phi) * wigner_d(idx, theta);
}

RecursionResiduals recursion_residuals(const AngularIndex& idx, double theta,
                                       const RecursionSigns& signs) {
  idx.validate();
  if (!(theta > 0.0 && theta < kPi) || std::sin(theta) < 1e-12)
    throw std::domain_error("recursion_residuals: theta must lie strictly inside (0, pi)");

  const HalfInt one = 1;
  const double lo = 0.5 * lower_factor(idx.j, idx.sigma) * d_or_zero(idx.j, idx.m, idx.sigma - one, theta);
  const double hi = 0.5 * upper_factor(idx.j, idx.sigma) * d_or_zero(idx.j, idx.m, idx.sigma + one, theta);

  const double d = wigner_d(idx, theta);
  const double lhs_derivative = wigner_d_derivative(idx, theta);
  const double rhs_derivative = signs.derivative_lower * lo + signs.derivative_upper * hi;

  const double lhs_ratio = (idx.m.value() - idx.sigma.value() * std::cos(theta)) / std::sin(theta) * d;
  const double rhs_ratio = signs.ratio_lower * lo + signs.ratio_upper * hi;

  return {std::abs(lhs_derivative - rhs_derivative), std::abs(lhs_ratio - rhs_ratio)};
}

std::array<SigmaTerm, 2> derivative_expansion(HalfInt j, HalfInt sigma) {
  const HalfInt one = 1;
  return {SigmaTerm{sigma - one, 0.5 * lower_factor(j, sigma)},
          SigmaTerm{sigma + one, -0.5 * upper_factor(j, sigma)}};
}

std::array<SigmaTerm, 2> ratio_expansion(HalfInt j, HalfInt sigma) {
  const HalfInt one = 1;
  return {SigmaTerm{sigma - one, -0.5 * lower_factor(j, sigma)},
          SigmaTerm{sigma + one, -0.5 * upper_factor(j, sigma)}};
}

PolarPoint parity_point(double theta, double phi) {
  double p = std::fmod(phi + kPi, 2.0 * kPi);
  if (p < 0.0) p += 2.0 * kPi;
  return {kPi - theta, p};
}

PolarPoint antipode(double theta, double phi) { return {kPi - theta, phi + kPi}; }

cd antipodal_phase(HalfInt j, HalfInt m) {
  // e^{-i pi m} (-1)^{j+m}; both factors are exact fourth roots of unity.
  static constexpr std::array<cd, 4> powers_of_minus_i{cd{1, 0}, cd{0, -1}, cd{-1, 0}, cd{0, 1}};
  const int q = ((m.twice() % 4) + 4) % 4;
  const int jm = (j.twice() + m.twice()) / 2;
  const double sign = (jm % 2 == 0) ? 1.0 : -1.0;
  return sign * powers_of_minus_i[static_cast<std::size_t>(q)];
}

PolarPoint SphereGrid::node(std::size_t index) const {
  return {theta[index / n_phi()], phi[index % n_phi()]};
}

double SphereGrid::weight(std::size_t index) const {
  return theta_weight[index / n_phi()] * phi_weight;
}

double SphereGrid::total_weight() const {
  double s = 0.0;
  for (std::size_t i = 0; i < size(); ++i) s += weight(i);
  return s;
}

SphereGrid::AntipodeNode SphereGrid::antipode_node(std::size_t index) const {
  const std::size_t it = index / n_phi();
  const std::size_t kp = index % n_phi();
  const std::size_t half = n_phi() / 2;
  const std::size_t k2 = kp + half;
  const bool wrapped = k2 >= n_phi();
  return {(n_theta() - 1 - it) * n_phi() + (wrapped ? k2 - n_phi() : k2), wrapped};
}

}  // namespace isodoublet
