#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>

#include "isodoublet/quadrature.hpp"
#include "isodoublet/radial.hpp"
#include "support.hpp"

using namespace isodoublet;

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 8, 16, 33}) {
    const GaussLegendre gl = gauss_legendre(n);
    REQUIRE(gl.x.size() == std::size_t(n));
    CHECK(std::is_sorted(gl.x.begin(), gl.x.end()));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += gl.w[i] * std::pow(gl.x[i], k);
      CHECK(s == doctest::Approx(k % 2 == 1 ? 0.0 : 2.0 / (k + 1)).epsilon(1e-13));
    }
    for (int i = 0; i < n; ++i) CHECK(gl.x[i] == doctest::Approx(-gl.x[n - 1 - i]));
  }
  CHECK_THROWS(gauss_legendre(0));
}

TEST_CASE("radial grid: doubling panels up to rmax") {
  const RadialGrid g = make_radial_grid({40.0, 1.0, 16});
  CHECK(g.rmax == 40.0);
  CHECK(g.size() % 16 == 0);
  CHECK(std::is_sorted(g.r.begin(), g.r.end()));
  CHECK(g.r.front() > 0.0);
  CHECK(g.r.back() < 40.0);
  double total = 0.0;
  for (double w : g.w) total += w;
  CHECK(total == doctest::Approx(40.0).epsilon(1e-14));
  // int_0^R r^n e^{-r} dr = n! (1 - e^{-R} sum_{k<=n} R^k / k!)
  for (int n : {0, 1, 2, 4, 6}) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i] * std::pow(g.r[i], n) * std::exp(-g.r[i]);
    double tail = 0.0, term = 1.0;
    for (int k = 0; k <= n; ++k, term *= 40.0 / k) tail += term;
    CHECK(s == doctest::Approx(std::tgamma(n + 1.0) * (1.0 - std::exp(-40.0) * tail)).epsilon(1e-13));
  }
}

TEST_CASE("product grid ordering and weights") {
  const ProductGrid g = make_product_grid(2, {10.0, 1.0, 8});
  CHECK(g.size() == g.radial.size() * g.sphere.size());
  double total = 0.0;
  for (double w : g.weights) total += w;
  CHECK(total == doctest::Approx(10.0 * 4 * kPi).epsilon(1e-13));
  CHECK(g.r(0) == g.radial.r[0]);
  CHECK(g.r(g.sphere.size()) == g.radial.r[1]);
}

TEST_CASE("exp-poly profiles are normalized on the half line") {
  const RadialGrid g = make_radial_grid({60.0, 1.0, 24});
  for (int p : {0, 1, 2, 3})
    for (double rate : {0.5, 1.0, 2.0}) {
      const ProfilePtr f = exp_poly_profile(p, rate, 0.25);
      double s = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i] * std::norm((*f)(g.r[i]));
      CHECK(s == doctest::Approx(0.25).epsilon(1e-12));
    }
  CHECK_THROWS_AS(exp_poly_profile(-1, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(exp_poly_profile(1, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("analytic and difference derivatives agree") {
  testing::Gen gen(21);
  const ProfilePtr f = exp_poly_profile(2, 1.3, 1.0);
  const ProfilePtr numeric = make_profile([f](double r) { return (*f)(r); });
  CHECK(f->has_analytic_derivative());
  CHECK_FALSE(numeric->has_analytic_derivative());
  for (int k = 0; k < 30; ++k) {
    const double r = gen.uniform(0.01, 10.0);
    CHECK(std::abs(f->derivative(r) - numeric->derivative(r)) < 1e-9);
  }
  CHECK_THROWS_AS(numeric->derivative(1e-6), std::domain_error);
}

TEST_CASE("derivative_of and multiply") {
  const ProfilePtr f = exp_poly_profile(1, 1.0, 1.0);
  const ProfilePtr df = derivative_of(f);
  CHECK(std::abs((*df)(2.0) - f->derivative(2.0)) < 1e-15);
  const ProfilePtr g = multiply(f, [](double r) { return cd(r); }, [](double) { return cd(1.0); });
  CHECK(std::abs((*g)(2.0) - 2.0 * (*f)(2.0)) < 1e-15);
  // (r f)' = f + r f'
  CHECK(std::abs(g->derivative(2.0) - ((*f)(2.0) + 2.0 * f->derivative(2.0))) < 1e-14);
}

TEST_CASE("tabulated profile interpolates and clamps") {
  std::vector<double> r;
  std::vector<cd> v;
  for (int k = 0; k <= 40; ++k) {
    r.push_back(0.1 * k);
    v.emplace_back(std::sin(0.1 * k), std::cos(0.1 * k));
  }
  const ProfilePtr t = tabulated_profile(r, v, "table");
  CHECK(std::abs((*t)(0.5) - cd(std::sin(0.5), std::cos(0.5))) < 1e-14);
  CHECK(std::abs((*t)(1.234) - cd(std::sin(1.234), std::cos(1.234))) < 1e-5);
  CHECK(std::abs((*t)(10.0) - v.back()) < 1e-14);
  CHECK_THROWS(tabulated_profile({0.0, 1.0}, {cd(1.0)}, "bad"));
}
