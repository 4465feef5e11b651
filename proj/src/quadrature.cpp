#include "isodoublet/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace isodoublet {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)),
      &gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("gauss_legendre: GSL table allocation failed");

  GaussLegendre rule;
  rule.x.resize(static_cast<std::size_t>(n));
  rule.w.resize(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < rule.x.size(); ++i)
    gsl_integration_glfixed_point(-1.0, 1.0, i, &rule.x[i], &rule.w[i], table.get());

  // GSL orders nodes by magnitude; sort ascending and symmetrize so that
  // x[n-1-i] == -x[i] exactly (the antipodal node lookup relies on it).
  std::vector<std::size_t> order(rule.x.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return rule.x[a] < rule.x[b]; });
  GaussLegendre sorted;
  for (auto i : order) {
    sorted.x.push_back(rule.x[i]);
    sorted.w.push_back(rule.w[i]);
  }
  const std::size_t m = sorted.x.size();
  for (std::size_t i = 0; i < m / 2; ++i) {
    const double x = 0.5 * (sorted.x[m - 1 - i] - sorted.x[i]);
    const double w = 0.5 * (sorted.w[m - 1 - i] + sorted.w[i]);
    sorted.x[i] = -x;
    sorted.x[m - 1 - i] = x;
    sorted.w[i] = sorted.w[m - 1 - i] = w;
  }
  if (m % 2 == 1) sorted.x[m / 2] = 0.0;
  return sorted;
}

SphereGrid make_sphere_grid(int j_max) {
  if (j_max < 0) throw std::invalid_argument("make_sphere_grid: j_max must be >= 0");
  SphereGrid g;
  g.j_max = j_max;
  const int n_theta = 2 * j_max + 2;
  const int n_phi = 4 * j_max + 4;

  const GaussLegendre gl = gauss_legendre(n_theta);
  // Ascending cos(theta) means descending theta; keep the cos order.
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    g.theta.push_back(std::acos(gl.x[i]));
    g.theta_weight.push_back(gl.w[i]);
  }
  g.phi_weight = 2.0 * kPi / n_phi;
  for (int k = 0; k < n_phi; ++k) g.phi.push_back(g.phi_weight * k);
  return g;
}

RadialGrid make_radial_grid(const RadialGridOptions& opts) {
  if (!(opts.rmax > 0.0) || !(opts.first_panel > 0.0) || opts.nodes_per_panel < 1)
    throw std::invalid_argument("make_radial_grid: invalid options");

  std::vector<double> breaks{0.0};
  double edge = std::min(opts.first_panel, opts.rmax);
  while (edge < opts.rmax) {
    breaks.push_back(edge);
    edge *= 2.0;
  }
  breaks.push_back(opts.rmax);

  const GaussLegendre gl = gauss_legendre(opts.nodes_per_panel);
  RadialGrid g;
  g.rmax = opts.rmax;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      g.r.push_back(mid + half * gl.x[i]);
      g.w.push_back(half * gl.w[i]);
    }
  }
  return g;
}

ProductGrid make_product_grid(int j_max, const RadialGridOptions& opts) {
  ProductGrid g{make_radial_grid(opts), make_sphere_grid(j_max), {}};
  g.weights.reserve(g.radial.size() * g.sphere.size());
  for (std::size_t ir = 0; ir < g.radial.size(); ++ir)
    for (std::size_t is = 0; is < g.sphere.size(); ++is)
      g.weights.push_back(g.radial.w[ir] * g.sphere.weight(is));
  return g;
}

}  // namespace isodoublet
