#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "isodoublet/operators.hpp"
#include "isodoublet/quadrature.hpp"
#include "isodoublet/states.hpp"
#include "support.hpp"

using namespace isodoublet;
using testing::Gen;

namespace {

SpectralField state(int j, int m, int delta, std::optional<int> mu, cd A,
                    ProfileForm form = ProfileForm::TwoProfile) {
  if (j == 0 || form == ProfileForm::FourProfile) mu.reset();
  return build_psi_A({0.0, j, m, delta, mu, A}, default_profiles(j, form));
}

double spinor_diff(const Spinor8& a, const Spinor8& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("gamma matrices satisfy the Clifford algebra") {
  const std::array<Mat4, 4> g{gamma::g0(), gamma::g1(), gamma::g2(), gamma::g3()};
  const double eta[4] = {1, -1, -1, -1};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Mat4 ac = g[a] * g[b] + g[b] * g[a];
      const Mat4 expected = (a == b ? 2.0 * eta[a] : 0.0) * Mat4::Identity();
      CHECK(max_abs_diff(ac, expected) < 1e-15);
    }
  CHECK(max_abs_diff(Mat4(gamma::g5() * gamma::g5()), Mat4(Mat4::Identity())) < 1e-15);
}

TEST_CASE("P_bisp is -gamma^1 gamma^5, anti-diagonal, squares to one") {
  const Mat4 p = pbisp();
  CHECK(max_abs_diff(p, Mat4(-gamma::g1() * gamma::g5())) < 1e-15);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(std::abs(p(r, c) - (r + c == 3 ? cd(-1.0) : cd(0.0))) < 1e-15);
  CHECK(max_abs_diff(Mat4(p * p), Mat4(Mat4::Identity())) < 1e-15);
}

TEST_CASE("pi_A forms") {
  CHECK(max_abs_diff(pi_A(kPi / 2), pauli::sigma2()) < 1e-15);
  CHECK(max_abs_diff(pi_A(0.0), pauli::sigma1()) < 1e-15);
  Gen g(41);
  for (int k = 0; k < 20; ++k) {
    const cd A = g.A();
    const double phi = g.phi();
    // Dirac form is a phi-shifted Schwinger form times -i sigma3.
    CHECK(max_abs_diff(pi_A_dirac(A, phi), Mat2(-kI * pauli::sigma3() * pi_A(A + phi))) < 1e-13);
  }
}

TEST_CASE("property: N_A eigenvalue delta (-1)^{j+1} for both profile forms") {
  Gen g(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int j = g.integer(0, 4), m = g.integer(-j, j), delta = g.sign();
    const cd A = g.A();
    const auto form = j > 0 && g.integer(0, 1) ? ProfileForm::FourProfile : ProfileForm::TwoProfile;
    const SpectralField f = state(j, m, delta, g.sign(), A, form);
    const DiscreteOperator n = make_N_A(A);
    const double lambda = delta * (j % 2 == 0 ? -1.0 : 1.0);
    const ProductGrid grid = make_product_grid(j + 1, {8.0, 8.0, 6});
    CHECK(max_abs_diff_scaled(apply_discrete(n, f), lambda, f, grid) < 1e-12);

    // Pointwise route evaluates Psi at the antipode directly.
    const PointwiseField pf = apply_discrete(n, as_pointwise(f));
    for (int k = 0; k < 5; ++k) {
      const double r = g.r(), t = g.theta(), p = g.phi();
      CHECK(spinor_diff(pf(r, t, p), lambda * f(r, t, p)) < 1e-12);
    }
  }
}

TEST_CASE("corrupted P_bisp phase breaks the eigenvalue") {
  Conventions bad;
  bad.pbisp_phase = -1.0;
  const SpectralField f = state(1, 0, 1, 1, 0.3);
  const ProductGrid grid = make_product_grid(2, {8.0, 8.0, 6});
  CHECK(max_abs_diff_scaled(apply_discrete(make_N_A(0.3, GaugeFrame::Schwinger, bad), f), 1.0, f, grid) > 0.1);
}

TEST_CASE("property: J^2 and J3 against finite differences") {
  Gen g(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int j = g.integer(0, 4), m = g.integer(-j, j);
    const SpectralField f = state(j, m, g.sign(), g.sign(), g.A());
    const PointwiseField pf = as_pointwise(f);
    const SpectralField j2 = apply_J(f, JComponent::Jsquared);
    const SpectralField j3 = apply_J(f, JComponent::J3);
    for (int k = 0; k < 4; ++k) {
      const double r = g.r(), t = g.uniform(0.3, kPi - 0.3), p = g.phi();
      const Spinor8 fd = testing::fd_jsquared(pf, r, t, p, testing::doublet_lambda);
      CHECK(spinor_diff(fd, j * (j + 1.0) * f(r, t, p)) < 1e-5);
      CHECK(spinor_diff(j2(r, t, p), fd) < 1e-5);
      // J3 = -i d_phi
      const double h = 1e-5;
      const Spinor8 dphi = (f(r, t, p + h) - f(r, t, p - h)) / (2 * h);
      CHECK(spinor_diff(j3(r, t, p), Spinor8(-kI * dphi)) < 1e-8);
    }
  }
}

TEST_CASE("J^2 on a non-eigen superposition matches finite differences") {
  // Mixed j content: J^2 acts term by term.
  const SpectralField f = state(1, 0, 1, 1, 0.0) + state(2, 0, 1, 1, 0.0);
  const PointwiseField pf = as_pointwise(f);
  const SpectralField j2 = apply_J(f, JComponent::Jsquared);
  const Spinor8 fd = testing::fd_jsquared(pf, 1.1, 1.0, 0.4, testing::doublet_lambda);
  CHECK(spinor_diff(j2(1.1, 1.0, 0.4), fd) < 1e-5);
}

TEST_CASE("property: K against finite differences; proportional on two-profile states") {
  Gen g(44);
  for (int trial = 0; trial < 15; ++trial) {
    const int j = g.integer(1, 4), m = g.integer(-j, j), mu = g.sign();
    const SpectralField f = state(j, m, g.sign(), mu, g.A());
    const SpectralField kf = apply_K(f);
    const PointwiseField pf = as_pointwise(f);
    const double c = mu * std::sqrt(j * (j + 1.0));
    for (int k = 0; k < 4; ++k) {
      const double r = g.r(), t = g.uniform(0.3, kPi - 0.3), p = g.phi();
      const Spinor8 fd = testing::fd_K(pf, r, t, p);
      CHECK(spinor_diff(kf(r, t, p), fd) < 1e-6);
      CHECK(spinor_diff(kf(r, t, p), c * f(r, t, p)) < 1e-12);
    }
  }
}

TEST_CASE("operators that need a well-formed field refuse others") {
  SpectralField bad(Sector::NonAbelian);
  bad.add({0, 0, {1, 0, 1}, exp_poly_profile(1, 1.0, 1.0), 1.0});
  CHECK_FALSE(bad.well_formed());
  CHECK_THROWS_AS(apply_J(bad, JComponent::Jsquared), ContractError);
  CHECK_THROWS_AS(apply_K(bad), ContractError);
}

TEST_CASE("Dirac residual: the special monopole leaves isocomponents uncoupled") {
  const SpectralField f = state(1, 0, 1, 1, 0.0);
  SpectralField upper(Sector::NonAbelian);
  for (const auto& t : f.terms())
    if (t.iso == 0) upper.add(t);
  auto lower_size = [](const SpectralField& s) {
    double n = 0.0;
    for (double r : {0.4, 1.0, 2.5})
      for (double t : {0.3, 1.2, 2.6}) n = std::max(n, s(r, t, 0.7).tail<4>().cwiseAbs().maxCoeff());
    return n;
  };
  CHECK(lower_size(dirac_residual(upper, 0.5, special_monopole())) < 1e-14);
  CHECK(lower_size(dirac_residual(upper, 0.5, background_from_keys({{"profile_K", "yukawa:1,0.5"}}))) > 1e-3);
}

TEST_CASE("Dirac residual matches a pointwise evaluation") {
  const BackgroundConfig cfg = background_from_keys({{"profile_K", "yukawa:0.7,0.3"},
                                                     {"profile_F", "const:0.2"},
                                                     {"profile_Phi", "const:0.4"},
                                                     {"kappa", "0.5"}});
  const SpectralField f = state(2, 1, 1, 1, 0.0);
  const SpectralField res = dirac_residual(f, 0.8, cfg);
  const PointwiseField pf = as_pointwise(f);
  const double r = 1.3, t = 1.0, p = 0.6, h = 1e-5;
  const Mat2 id = Mat2::Identity(), t1 = 0.5 * pauli::sigma1(), t2 = 0.5 * pauli::sigma2(),
             t3 = 0.5 * pauli::sigma3();
  const Spinor8 v = pf(r, t, p);
  const Spinor8 dr = (pf(r + h, t, p) - pf(r - h, t, p)) / (2 * h);
  const double K = (*cfg.profile_K)(r).real(), F = 0.2, Phi = 0.4;
  Spinor8 expected = kron(id, Mat4(0.8 * gamma::g0() - cfg.mass * Mat4::Identity())) * v;
  expected += cfg.e_coup * r * F * kron(t3, gamma::g0()) * v;
  expected += kron(id, Mat4(kI * gamma::g3())) * dr;
  // Sigma from the K oracle: K = i gamma^0 gamma^3 Sigma.
  const Mat8 pre_inv = kron(id, Mat4((kI * gamma::g0() * gamma::g3()).inverse()));
  expected += pre_inv * testing::fd_K(pf, r, t, p) / r;
  expected += (cfg.e_coup * r * r * K + 1.0) / r * (kron(t2, gamma::g1()) - kron(t1, gamma::g2())) * v;
  expected += -cfg.kappa * r * Phi * kron(t3, Mat4(Mat4::Identity())) * v;
  CHECK(spinor_diff(res(r, t, p), expected) < 1e-6);
}

TEST_CASE("conjugation relation holds in all frames") {
  Gen g(45);
  const auto pts = sample_points(100, 7, true);
  CHECK(pts.size() == 100);
  CHECK(pts[0].theta == doctest::Approx(0.05));
  CHECK(pts[1].theta == doctest::Approx(kPi - 0.05));
  for (int k = 0; k < 10; ++k) {
    const cd A = g.A();
    CHECK(verify_conjugation(A, GaugeFrame::Schwinger, pts) < 1e-12);
    CHECK(verify_conjugation(A, GaugeFrame::Dirac, pts) < 1e-12);
    CHECK(verify_conjugation(A, GaugeFrame::Cartesian, pts) < 1e-11);
  }
}

TEST_CASE("Cartesian pieces against direct matrix algebra") {
  Gen g(46);
  for (int k = 0; k < 20; ++k) {
    const double t = g.theta(), p = g.phi();
    const Mat2 r = cartesian_transport(t, p);
    const Mat2 n = std::sin(t) * std::cos(p) * pauli::sigma1() + std::sin(t) * std::sin(p) * pauli::sigma2() +
                   std::cos(t) * pauli::sigma3();
    CHECK(max_abs_diff(Mat2(r * pauli::sigma3() * r.inverse()), n) < 1e-14);
    const cd A = g.A();
    CHECK(max_abs_diff(pi_A_cartesian(A, t, p), Mat2(-kI * (-kI * A * n).exp())) < 1e-12);
  }
}

TEST_CASE("to_cartesian and from_cartesian are inverse") {
  const SpectralField f = state(1, 1, -1, 1, cd(0.2, 0.1));
  const PointwiseField back = from_cartesian(to_cartesian(f));
  CHECK(back.frame == GaugeFrame::Schwinger);
  CHECK(spinor_diff(back(1.0, 0.8, 2.0), f(1.0, 0.8, 2.0)) < 1e-14);
}

TEST_CASE("gauge maps: composition, frame rules") {
  Gen g(47);
  for (int k = 0; k < 20; ++k) {
    const cd a = g.A(), b = g.A(), c = g.A();
    const double t = g.theta(), p = g.phi();
    for (auto frame : {GaugeFrame::Schwinger, GaugeFrame::Dirac, GaugeFrame::Cartesian}) {
      const Mat2 lhs = make_U(c, b, frame).at(t, p) * make_U(b, a, frame).at(t, p);
      CHECK(max_abs_diff(lhs, make_U(c, a, frame).at(t, p)) < 1e-13);
    }
  }
  const SpectralField f = state(1, 0, 1, 1, 0.0);
  CHECK_THROWS_AS(apply_gauge(make_U(1.0, 0.0, GaugeFrame::Cartesian), f), ContractError);
  CHECK_THROWS_AS(apply_gauge(make_U(1.0, 0.0, GaugeFrame::Dirac), f), ContractError);
}

TEST_CASE("Omega classification") {
  for (int axis = 0; axis < 3; ++axis) {
    const ObservableSpec x = position_observable(axis);
    CHECK(classify_omega_A(x, 0.0) == OmegaClass::Minus);
    CHECK(classify_omega_A(x, 1.3) == OmegaClass::Minus);
    CHECK(classify_omega_A(x, cd(0.5, 0.4)) == OmegaClass::Unclassified);
    CHECK(classify_omega0(x) == OmegaClass::Minus);
  }
  CHECK(classify_omega_A(scalar_observable(), 0.7) == OmegaClass::Plus);
  CHECK(classify_omega0(scalar_observable()) == OmegaClass::Plus);
}

TEST_CASE("Abelian sector: parity flips the charge label, M-hat restores it") {
  const SpectralField f = build_abelian_phi(HalfInt::half(1), 1, 0, 1, default_profiles(1));
  const SpectralField p = apply_discrete(make_parity(), f);
  CHECK(p.eg() == HalfInt::half(-1));
  CHECK(p.well_formed());
  const SpectralField g = apply_discrete(make_M(), f);
  CHECK(g.eg() == HalfInt::half(1));
  CHECK(g.well_formed());
  CHECK_THROWS_AS(apply_discrete(make_M(), state(1, 0, 1, 1, 0.0)), ContractError);
}
