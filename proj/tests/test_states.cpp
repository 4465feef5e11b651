#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "isodoublet/quadrature.hpp"
#include "isodoublet/states.hpp"
#include "support.hpp"

using namespace isodoublet;
using testing::Gen;

namespace {

QuantumNumbers labels(int j, int m, int delta, std::optional<int> mu, cd A) { return {0.0, j, m, delta, mu, A}; }

}  // namespace

TEST_CASE("quantum number validation") {
  CHECK_THROWS_AS(labels(1, 2, 1, 1, 0.0).validate(), std::domain_error);
  CHECK_THROWS_AS(labels(1, 0, 0, 1, 0.0).validate(), std::domain_error);
  CHECK_THROWS_AS(labels(1, 0, 1, 2, 0.0).validate(), std::domain_error);
  CHECK_THROWS_AS(labels(0, 0, 1, 1, 0.0).validate(), std::domain_error);
  CHECK_THROWS_AS(labels(1, 0, 1, 1, cd(NAN, 0.0)).validate(), std::domain_error);
  CHECK_NOTHROW(labels(0, 0, -1, std::nullopt, cd(0.3, 0.2)).validate());
  CHECK(labels(2, 0, 1, 1, 0.0).n_parity() == -1);
  CHECK(labels(3, 0, -1, 1, 0.0).n_parity() == -1);
}

TEST_CASE("property: built states are well formed and carry J3 labels") {
  Gen g(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int j = g.integer(0, 4), m = g.integer(-j, j);
    const std::optional<int> mu = j == 0 ? std::nullopt : std::optional<int>(g.sign());
    const auto form = j > 0 && g.integer(0, 1) ? ProfileForm::FourProfile : ProfileForm::TwoProfile;
    const SpectralField f = build_psi_A(labels(j, m, g.sign(), form == ProfileForm::FourProfile ? std::nullopt : mu, g.A()),
                                        default_profiles(j, form));
    CHECK(f.well_formed());
    for (const auto& t : f.terms()) {
      CHECK(t.index.j == HalfInt(j));
      CHECK(t.index.m == HalfInt(-m));
    }
  }
}

TEST_CASE("real-A states are unit normalized; complex A rescales the lower isocomponent") {
  const ProductGrid grid = make_product_grid(3, {40.0, 1.0, 16});
  Gen g(32);
  for (int trial = 0; trial < 12; ++trial) {
    const int j = g.integer(0, 2), m = g.integer(-j, j);
    const std::optional<int> mu = j == 0 ? std::nullopt : std::optional<int>(g.sign());
    const cd A = g.A();
    const SpectralField f = build_psi_A(labels(j, m, g.sign(), mu, A), default_profiles(j));
    // Upper half contributes 1/2, lower half |e^{iA}|^2 / 2.
    const double expected = 0.5 + 0.5 * std::exp(-2.0 * A.imag());
    CHECK(inner_product(f, f, grid).real() == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("missing or surplus profiles are rejected") {
  RadialProfiles rad = default_profiles(1);
  rad.f1.reset();
  CHECK_THROWS_AS(build_psi_A(labels(1, 0, 1, 1, 0.0), rad), std::invalid_argument);
  RadialProfiles four = default_profiles(1, ProfileForm::FourProfile);
  four.f4.reset();
  CHECK_THROWS_AS(build_psi_A(labels(1, 0, 1, std::nullopt, 0.0), four), std::invalid_argument);
  CHECK_THROWS_AS(build_psi_A(labels(1, 0, 1, std::nullopt, 0.0), default_profiles(1)), std::invalid_argument);
  CHECK_THROWS_AS(build_psi_A(labels(0, 0, 1, std::nullopt, 0.0), default_profiles(1)), std::domain_error);
}

TEST_CASE("Abelian builder") {
  const RadialProfiles rad = default_profiles(1);
  const SpectralField f = build_abelian_phi(HalfInt::half(1), 1, 1, 1, rad);
  CHECK(f.sector() == Sector::Abelian);
  CHECK(f.eg() == HalfInt::half(1));
  CHECK(f.well_formed());
  CHECK(f.terms().size() == 4);
  // j = 1/2, eg = 1/2: sigma would be 0 and 1, both invalid for half-integer j.
  CHECK_THROWS_AS(build_abelian_phi(HalfInt::half(1), HalfInt::half(1), HalfInt::half(1), 1, rad), std::domain_error);
  CHECK_THROWS_AS(build_abelian_phi(1, 1, 0, 1, rad), std::domain_error);
  CHECK_THROWS_AS(build_abelian_phi(0, 1, 0, 3, rad), std::domain_error);
  // j = 0 keeps only the valid sigma = 0 pair.
  const SpectralField z = build_abelian_phi(HalfInt::half(-1), 0, 0, 1, default_profiles(1));
  CHECK(z.terms().size() == 2);
}

TEST_CASE("property: the Abelian decomposition reconstructs the doublet") {
  Gen g(33);
  const ProductGrid grid = make_product_grid(3, {12.0, 12.0, 8});
  for (int trial = 0; trial < 20; ++trial) {
    const int j = g.integer(0, 3), m = g.integer(-j, j);
    const std::optional<int> mu = j == 0 ? std::nullopt : std::optional<int>(g.sign());
    const SpectralField f = build_psi_A(labels(j, m, g.sign(), mu, g.A()), default_profiles(j));
    const AbelianDecomposition d = decompose_to_abelian(f);
    CHECK(d.phi_minus.eg() == HalfInt::half(-1));
    CHECK(d.phi_plus.eg() == HalfInt::half(1));
    CHECK(d.phi_minus.well_formed());
    CHECK(d.phi_plus.well_formed());
    CHECK(max_abs_diff(d.reconstruct(), f, grid) < 1e-14);
  }
}

TEST_CASE("decomposition rejects foreign shapes") {
  const SpectralField four = build_psi_A(labels(1, 0, 1, std::nullopt, 0.0), default_profiles(1, ProfileForm::FourProfile));
  CHECK_THROWS_AS(decompose_to_abelian(four), ContractError);
  SpectralField upper_only(Sector::NonAbelian);
  for (auto t : build_psi_A(labels(1, 0, 1, 1, 0.0), default_profiles(1)).terms())
    if (t.iso == 0) upper_only.add(t);
  CHECK_THROWS_AS(decompose_to_abelian(upper_only), ContractError);
  CHECK_THROWS_AS(decompose_to_abelian(SpectralField(Sector::NonAbelian)), ContractError);
}

TEST_CASE("property: change of basis composes and matches direct construction") {
  Gen g(34);
  const ProductGrid grid = make_product_grid(3, {12.0, 12.0, 8});
  for (int trial = 0; trial < 15; ++trial) {
    const int j = g.integer(0, 2), m = g.integer(-j, j);
    const std::optional<int> mu = j == 0 ? std::nullopt : std::optional<int>(g.sign());
    const cd a = g.A(), b = g.A(), c = g.A();
    const RadialProfiles rad = default_profiles(j);
    std::vector<LabeledState> at_a{{labels(j, m, 1, mu, a), build_psi_A(labels(j, m, 1, mu, a), rad)},
                                   {labels(j, m, -1, mu, a), build_psi_A(labels(j, m, -1, mu, a), rad)}};
    const auto at_b = change_basis(at_a, b);
    const auto at_c = change_basis(at_b, c);
    for (int k = 0; k < 2; ++k) {
      const int delta = at_c[k].q.delta;
      CHECK(max_abs_diff(at_b[k].field, build_psi_A(labels(j, m, at_b[k].q.delta, mu, b), rad), grid) < 1e-12);
      CHECK(max_abs_diff(at_c[k].field, build_psi_A(labels(j, m, delta, mu, c), rad), grid) < 1e-12);
    }
  }
}

TEST_CASE("change of basis input contract") {
  const RadialProfiles rad = default_profiles(1);
  const LabeledState p{labels(1, 0, 1, 1, 0.0), build_psi_A(labels(1, 0, 1, 1, 0.0), rad)};
  const LabeledState q{labels(1, 1, -1, 1, 0.0), build_psi_A(labels(1, 1, -1, 1, 0.0), rad)};
  CHECK_THROWS_AS(change_basis(std::vector<LabeledState>{p}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(change_basis(std::vector<LabeledState>{p, p}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(change_basis(std::vector<LabeledState>{p, q}, 1.0), std::invalid_argument);
}
