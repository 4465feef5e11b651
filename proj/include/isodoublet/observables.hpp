#pragma once

#include <optional>
#include <string>

#include "isodoublet/operators.hpp"
#include "isodoublet/states.hpp"

namespace isodoublet {

/// Plain: sum conj(bra) G ket. DiracAdjoint: bra^+ gamma^0 G ket.
enum class Pairing { Plain, DiracAdjoint };

cd matrix_element(const ObservableSpec& obs, const SpectralField& bra, const SpectralField& ket,
                  const ProductGrid& grid, Pairing pairing = Pairing::Plain);

/// Closed form of the overlaps of {Psi^A_+, Psi^A_-}:
/// diagonal (1 + e^{i(A - A*)})/2, off-diagonal (1 - e^{i(A - A*)})/2.
Mat2 gram_closed_form(cd A);

/// Quadrature Gram matrix of the delta = +1, -1 states with the given labels.
Mat2 gram_matrix(cd A, int j, int m, const RadialProfiles& rad, const ProductGrid& grid,
                 std::optional<int> mu = 1);

/// Ascending eigenvalues of a Hermitian 2x2 matrix.
Eigen::Vector2d hermitian_eigenvalues(const Mat2& g);

/// e^{i alpha} cos(Gamma) Psi_+ + e^{i beta} sin(Gamma) Psi_- in the basis
/// with parameter base_A, re-expressed as m Psi^A_+ + n Psi^A_-.
struct SuperpositionSpec {
  double Gamma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  cd base_A{0.0, 0.0};

  void validate() const;
  cd m(cd A) const;
  cd n(cd A) const;
};

enum class ExpectationCase {
  AZero,          // f = 0, g_im = 0
  ARealPhase,     // f != 0, g_im = 0
  AImaginary,     // f = 0, g_im != 0
  AComplex        // both nonzero
};
std::string_view case_name(ExpectationCase c);
ExpectationCase classify_case(cd A);

struct ExpectationReport {
  cd value;          // quadrature <Psi | N_A Psi>
  cd closed_form;    // (-1)^{j+1} (rho cosh g + i sigma sinh g)
  double rho_coef = 0.0;
  double sigma_coef = 0.0;
  ExpectationCase case_tag = ExpectationCase::AZero;
  double deviation = 0.0;  // |value - closed_form|
};

/// rho = cos2G cos f + sin2G sin f sin(a - b),
/// sigma = -cos2G sin f + sin2G cos f sin(a - b).
void expectation_coefficients(const SuperpositionSpec& spec, cd A, double& rho, double& sigma);

/// The state is built from Psi^A_{+-} (labels j, m, mu = +1, default
/// two-profile test profiles unless `rad` is given) and N_A applied exactly.
ExpectationReport expectation_N_A(const SuperpositionSpec& spec, cd A, int j, const ProductGrid& grid,
                                  int m = 0, const RadialProfiles* rad = nullptr,
                                  const Conventions& conv = {});

struct RecoveredParams {
  bool determined = false;        // false when g_im = 0
  double cos2Gamma = 0.0;         // valid when determined
  double sin2Gamma_sin = 0.0;     // sin(2 Gamma) sin(alpha - beta), valid when determined
  double single_constraint = 0.0; // cos2G cos f + sin2G sin f sin(a-b), when !determined
  /// The alternative second line rho cos f + sigma sin f, and whether it
  /// agrees with the algebraic inverse to 1e-9.
  double printed_second_line = 0.0;
  bool printed_matches = false;
};

/// Inverts the closed form: cos2G = rho cos f - sigma sin f,
/// sin2G sin(a-b) = rho sin f + sigma cos f, with rho and sigma read off
/// the measured value.
RecoveredParams recover_state_params(const ExpectationReport& report, cd A, int j);

enum class SelectionVerdict { Forbidden, Allowed, NoRule };
std::string_view verdict_name(SelectionVerdict v);

/// Labels a selection rule needs. parity is delta (doublet) or mu (Abelian).
struct StateLabels {
  Sector sector = Sector::NonAbelian;
  HalfInt eg = 0;
  HalfInt j = 1;
  int parity = 1;
};

struct SelectionResult {
  SelectionVerdict verdict = SelectionVerdict::NoRule;
  OmegaClass omega = OmegaClass::Unclassified;
  int sign_product = 0;  // the product whose value -1 forbids
  std::string diagnostic;
};

/// Doublet: forbidden when Omega delta delta' (-1)^{j+j'} = -1.
/// Free Abelian (eg = 0): forbidden when omega0 mu mu' (-1)^{j+j'+1} = -1.
/// Abelian eg != 0 and unclassified observables: no rule.
SelectionResult check_selection_rule(const ObservableSpec& obs, const StateLabels& bra, const StateLabels& ket,
                                     cd A, const Conventions& conv = {});

enum class ReflectionKind {
  Free,       // Phi(-x) = P_bisp mu e^{i pi (j+1)} Phi(x)
  NonAbelian  // Psi(-x) = (pi_A x P_bisp) delta (-1)^{j+1} Psi(x); pi_A = sigma2 at A = pi/2
};

/// max over grid nodes of |Psi(-x) - M lambda Psi(x)| divided by max |Psi|,
/// with Psi(-x) evaluated directly at the antipodal point.
double reflection_relation_residual(const SpectralField& state, ReflectionKind kind, const StateLabels& labels,
                                    cd A, const ProductGrid& grid, const Conventions& conv = {});

struct ComponentExpansion {
  cd minus;  // T+ x Phi^{-1/2} contribution
  cd plus;   // T- x Phi^{+1/2} contribution
  cd total;  // matrix_element on the full state
  /// max of |<Phi^{+-}(-x)| -x |Phi^{+-}(-x)> + <Phi^{-+}|x|Phi^{-+}>|
  double antipodal_residual = 0.0;
};

/// Splits <Psi|x_axis|Psi> over the Abelian constituents of Psi.
ComponentExpansion abelian_component_expansion(int axis, const SpectralField& psi, const ProductGrid& grid);

struct AdjointDefect {
  cd lhs;                      // <N_A Phi | Psi>
  cd rhs;                      // <Phi | e^{i(A - A*) sigma3} N_A Psi>
  double relation_residual = 0.0;
  double self_adjoint_defect = 0.0;  // |<N_A Phi|Psi> - <Phi|N_A Psi>|
};

AdjointDefect adjoint_defect(cd A, const SpectralField& phi, const SpectralField& psi, const ProductGrid& grid,
                             const Conventions& conv = {});

}  // namespace isodoublet
