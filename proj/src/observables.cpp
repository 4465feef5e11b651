#include "isodoublet/observables.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace isodoublet {

namespace {

SampledField apply_observable(const ObservableSpec& obs, const SampledField& ket, const ProductGrid& grid,
                              Pairing pairing) {
  SampledField out = ket;
  const Mat4 left = pairing == Pairing::DiracAdjoint ? Mat4(gamma::g0()) : Mat4(Mat4::Identity());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const auto p = grid.angles(n);
    const Mat8 g = kron(obs.iso_block(grid.r(n), p.theta, p.phi), left * obs.bispinor_core);
    out.set(n, g * ket.at(n));
  }
  return out;
}

// Psi evaluated at the antipode of every node.
PointwiseField at_antipode(const SpectralField& f) {
  const PointwiseField p = as_pointwise(f);
  return {f.frame(), [p](double r, double t, double ph) {
            const auto a = antipode(t, ph);
            return p(r, a.theta, a.phi);
          }};
}

double sign_of_power(int twice_exponent) {
  // (-1)^k for integral k = twice_exponent / 2.
  return (twice_exponent / 2) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

cd matrix_element(const ObservableSpec& obs, const SpectralField& bra, const SpectralField& ket,
                  const ProductGrid& grid, Pairing pairing) {
  const SampledField k = apply_observable(obs, sample(ket, grid), grid, pairing);
  return inner_product(sample(bra, grid), k, grid);
}

Mat2 gram_closed_form(cd A) {
  const cd e = std::exp(kI * (A - std::conj(A)));
  Mat2 g;
  g << (1.0 + e) / 2.0, (1.0 - e) / 2.0, (1.0 - e) / 2.0, (1.0 + e) / 2.0;
  return g;
}

Mat2 gram_matrix(cd A, int j, int m, const RadialProfiles& rad, const ProductGrid& grid, std::optional<int> mu) {
  if (j == 0) mu.reset();
  QuantumNumbers q{0.0, j, m, 1, mu, A};
  const SampledField plus = sample(build_psi_A(q, rad), grid);
  q.delta = -1;
  const SampledField minus = sample(build_psi_A(q, rad), grid);
  Mat2 g;
  g(0, 0) = inner_product(plus, plus, grid);
  g(0, 1) = inner_product(plus, minus, grid);
  g(1, 0) = inner_product(minus, plus, grid);
  g(1, 1) = inner_product(minus, minus, grid);
  return g;
}

Eigen::Vector2d hermitian_eigenvalues(const Mat2& g) {
  Eigen::SelfAdjointEigenSolver<Mat2> solver(g, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

void SuperpositionSpec::validate() const {
  if (!(Gamma >= 0.0 && Gamma <= kPi / 2.0)) throw std::domain_error("SuperpositionSpec: Gamma must lie in [0, pi/2]");
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw std::domain_error("SuperpositionSpec: phases must be finite");
}

cd SuperpositionSpec::m(cd A) const {
  const cd e = std::exp(-kI * (A - base_A));
  return std::exp(kI * alpha) * std::cos(Gamma) * (1.0 + e) / 2.0 + std::exp(kI * beta) * std::sin(Gamma) * (1.0 - e) / 2.0;
}

cd SuperpositionSpec::n(cd A) const {
  const cd e = std::exp(-kI * (A - base_A));
  return std::exp(kI * alpha) * std::cos(Gamma) * (1.0 - e) / 2.0 + std::exp(kI * beta) * std::sin(Gamma) * (1.0 + e) / 2.0;
}

std::string_view case_name(ExpectationCase c) {
  switch (c) {
    case ExpectationCase::AZero: return "A=0";
    case ExpectationCase::ARealPhase: return "A real";
    case ExpectationCase::AImaginary: return "A imaginary";
    case ExpectationCase::AComplex: return "A complex";
  }
  return "?";
}

ExpectationCase classify_case(cd A) {
  const bool f = A.real() != 0.0, g = A.imag() != 0.0;
  if (!f && !g) return ExpectationCase::AZero;
  if (f && !g) return ExpectationCase::ARealPhase;
  if (!f) return ExpectationCase::AImaginary;
  return ExpectationCase::AComplex;
}

void expectation_coefficients(const SuperpositionSpec& spec, cd A, double& rho, double& sigma) {
  const double f = (A - spec.base_A).real();
  const double c2 = std::cos(2.0 * spec.Gamma), s2 = std::sin(2.0 * spec.Gamma);
  const double sab = std::sin(spec.alpha - spec.beta);
  rho = c2 * std::cos(f) + s2 * std::sin(f) * sab;
  sigma = -c2 * std::sin(f) + s2 * std::cos(f) * sab;
}

ExpectationReport expectation_N_A(const SuperpositionSpec& spec, cd A, int j, const ProductGrid& grid, int m,
                                  const RadialProfiles* rad, const Conventions& conv) {
  spec.validate();
  if (spec.base_A.imag() != 0.0) throw std::domain_error("expectation_N_A: base_A must be real");
  const RadialProfiles profiles = rad ? *rad : default_profiles(j);
  std::optional<int> mu = 1;
  if (j == 0) mu.reset();
  QuantumNumbers q{0.0, j, m, 1, mu, A};
  const SpectralField plus = build_psi_A(q, profiles);
  q.delta = -1;
  const SpectralField minus = build_psi_A(q, profiles);
  const SpectralField psi = plus.scaled(spec.m(A)) + minus.scaled(spec.n(A));
  const SpectralField n_psi = apply_discrete(make_N_A(A, GaugeFrame::Schwinger, conv), psi);

  ExpectationReport rep;
  rep.value = inner_product(psi, n_psi, grid);
  expectation_coefficients(spec, A, rep.rho_coef, rep.sigma_coef);
  const double g = A.imag();
  const double sign = j % 2 == 0 ? -1.0 : 1.0;
  rep.closed_form = sign * cd(rep.rho_coef * std::cosh(g), rep.sigma_coef * std::sinh(g));
  rep.case_tag = classify_case(A - spec.base_A);
  rep.deviation = std::abs(rep.value - rep.closed_form);
  return rep;
}

RecoveredParams recover_state_params(const ExpectationReport& report, cd A, int j) {
  const double f = A.real(), g = A.imag();
  const double sign = j % 2 == 0 ? -1.0 : 1.0;
  RecoveredParams out;
  if (g == 0.0) {
    out.single_constraint = report.value.real() / sign;
    return out;
  }
  const double rho = report.value.real() / (sign * std::cosh(g));
  const double sigma = report.value.imag() / (sign * std::sinh(g));
  out.determined = true;
  out.cos2Gamma = rho * std::cos(f) - sigma * std::sin(f);
  out.sin2Gamma_sin = rho * std::sin(f) + sigma * std::cos(f);
  out.printed_second_line = rho * std::cos(f) + sigma * std::sin(f);
  out.printed_matches = std::abs(out.printed_second_line - out.sin2Gamma_sin) <= 1e-9;
  return out;
}

std::string_view verdict_name(SelectionVerdict v) {
  switch (v) {
    case SelectionVerdict::Forbidden: return "forbidden";
    case SelectionVerdict::Allowed: return "allowed";
    case SelectionVerdict::NoRule: return "no-rule";
  }
  return "?";
}

SelectionResult check_selection_rule(const ObservableSpec& obs, const StateLabels& bra, const StateLabels& ket,
                                     cd A, const Conventions& conv) {
  SelectionResult res;
  if (bra.sector != ket.sector) {
    res.diagnostic = "states from different sectors";
    return res;
  }
  const int jj = bra.j.twice() + ket.j.twice();
  if (jj % 2 != 0) {
    res.diagnostic = "j + j' is not integral";
    return res;
  }
  if (bra.sector == Sector::NonAbelian) {
    res.omega = classify_omega_A(obs, A, conv);
    if (res.omega == OmegaClass::Unclassified) {
      res.diagnostic = "observable has no definite Omega^A at this A";
      return res;
    }
    const int omega = res.omega == OmegaClass::Plus ? 1 : -1;
    res.sign_product = omega * bra.parity * ket.parity * static_cast<int>(sign_of_power(jj));
  } else {
    if (bra.eg != HalfInt{0} || ket.eg != HalfInt{0}) {
      res.diagnostic = "no reflection relation in the presence of the Abelian monopole";
      return res;
    }
    res.omega = classify_omega0(obs, conv);
    if (res.omega == OmegaClass::Unclassified) {
      res.diagnostic = "observable has no definite omega0";
      return res;
    }
    const int omega = res.omega == OmegaClass::Plus ? 1 : -1;
    res.sign_product = omega * bra.parity * ket.parity * static_cast<int>(-sign_of_power(jj));
  }
  res.verdict = res.sign_product == -1 ? SelectionVerdict::Forbidden : SelectionVerdict::Allowed;
  return res;
}

double reflection_relation_residual(const SpectralField& state, ReflectionKind kind, const StateLabels& labels,
                                    cd A, const ProductGrid& grid, const Conventions& conv) {
  Mat8 m;
  cd lambda;
  if (kind == ReflectionKind::Free) {
    if (state.sector() != Sector::Abelian) throw ContractError("reflection_relation_residual: Free needs an Abelian field");
    m = kron(Mat2::Identity(), pbisp(conv));
    // e^{i pi (j+1)} for integer or half-integer j
    lambda = double(labels.parity) * std::polar(1.0, kPi * (labels.j.value() + 1.0));
    if (labels.j.is_integer()) lambda = double(labels.parity) * sign_of_power(2 * (labels.j.as_int() + 1));
  } else {
    if (state.sector() != Sector::NonAbelian)
      throw ContractError("reflection_relation_residual: NonAbelian needs a doublet field");
    m = kron(pi_A(A), pbisp(conv));
    lambda = double(labels.parity) * sign_of_power(labels.j.twice() + 2);
  }
  const SampledField here = sample(state, grid);
  const SampledField there = sample(at_antipode(state), grid);
  SampledField rhs = here;
  double biggest = 0.0;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const Spinor8 v = here.at(n);
    biggest = std::max(biggest, v.cwiseAbs().maxCoeff());
    rhs.set(n, lambda * (m * v));
  }
  if (biggest == 0.0) throw std::invalid_argument("reflection_relation_residual: state vanishes on the grid");
  return max_abs_diff(there, rhs) / biggest;
}

ComponentExpansion abelian_component_expansion(int axis, const SpectralField& psi, const ProductGrid& grid) {
  const ObservableSpec x = position_observable(axis);
  const AbelianDecomposition d = decompose_to_abelian(psi);
  const cd pm = matrix_element(x, d.phi_minus, d.phi_minus, grid);
  const cd pp = matrix_element(x, d.phi_plus, d.phi_plus, grid);
  ComponentExpansion out;
  out.minus = d.scale * d.scale * std::norm(d.coef_minus) * pm;
  out.plus = d.scale * d.scale * std::norm(d.coef_plus) * pp;
  out.total = matrix_element(x, psi, psi, grid);

  // <Phi(-x)| -x |Phi(-x)>, evaluated literally at the antipodes.
  ObservableSpec minus_x = x;
  minus_x.iso_block = [x](double r, double t, double p) -> Mat2 { return -x.iso_block(r, t, p); };
  auto reflected = [&](const SpectralField& f) {
    const SampledField s = sample(at_antipode(f), grid);
    return inner_product(s, apply_observable(minus_x, s, grid, Pairing::Plain), grid);
  };
  out.antipodal_residual =
      std::max(std::abs(reflected(d.phi_plus) + pm), std::abs(reflected(d.phi_minus) + pp));
  return out;
}

AdjointDefect adjoint_defect(cd A, const SpectralField& phi, const SpectralField& psi, const ProductGrid& grid,
                             const Conventions& conv) {
  const DiscreteOperator n = make_N_A(A, GaugeFrame::Schwinger, conv);
  const SpectralField n_phi = apply_discrete(n, phi);
  const SpectralField n_psi = apply_discrete(n, psi);
  const cd e = std::exp(kI * (A - std::conj(A)));
  Mat2 twist = Mat2::Zero();
  twist(0, 0) = e;
  twist(1, 1) = 1.0 / e;
  const SpectralField twisted = spectral::apply_matrix(kron(twist, Mat4::Identity()), n_psi);

  AdjointDefect out;
  out.lhs = inner_product(n_phi, psi, grid);
  out.rhs = inner_product(phi, twisted, grid);
  out.relation_residual = std::abs(out.lhs - out.rhs);
  out.self_adjoint_defect = std::abs(out.lhs - inner_product(phi, n_psi, grid));
  return out;
}

}  // namespace isodoublet
