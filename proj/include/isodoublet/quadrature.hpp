#pragma once

#include <cstddef>
#include <vector>

#include "isodoublet/angular.hpp"

namespace isodoublet {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};
GaussLegendre gauss_legendre(int n);

/// Composite Gauss-Legendre rule on [0, rmax].
struct RadialGrid {
  std::vector<double> r;
  std::vector<double> w;
  double rmax = 0.0;
  std::size_t size() const { return r.size(); }
};

struct RadialGridOptions {
  double rmax = 40.0;
  /// Panel breakpoints grow geometrically from `first_panel` up to rmax.
  double first_panel = 1.0;
  int nodes_per_panel = 16;
};

RadialGrid make_radial_grid(const RadialGridOptions& opts = {});

/// Tensor product of a radial rule and a sphere rule; the measure is dr dOmega
/// because fields are stored with the 1/r prefactor removed.
struct ProductGrid {
  RadialGrid radial;
  SphereGrid sphere;
  /// Flattened order is radial-major: index = i_r * sphere.size() + i_sphere.
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  double r(std::size_t index) const { return radial.r[index / sphere.size()]; }
  PolarPoint angles(std::size_t index) const { return sphere.node(index % sphere.size()); }
};

ProductGrid make_product_grid(int j_max, const RadialGridOptions& opts = {});

}  // namespace isodoublet
