#pragma once

#include <optional>
#include <span>
#include <vector>

#include "isodoublet/field.hpp"

namespace isodoublet {

/// Labels of a doublet state. `A` is the complex parameter f + i g_im.
/// For j = 0 the state carries no mu and m = 0.
struct QuantumNumbers {
  double epsilon = 0.0;
  int j = 1;
  int m = 0;
  int delta = 1;
  std::optional<int> mu = 1;
  cd A{0.0, 0.0};

  /// Throws std::domain_error on an invalid combination.
  void validate() const;
  /// Eigenvalue of N_A: delta (-1)^{j+1}.
  int n_parity() const { return delta * (j % 2 == 0 ? -1 : 1); }
};

/// f1..f4; a null pointer means "absent". The two-profile form uses f1, f2
/// and mu; the four-profile form uses all four; j = 0 uses f2, f4.
struct RadialProfiles {
  ProfilePtr f1, f2, f3, f4;
};

enum class ProfileForm { TwoProfile, FourProfile };

/// Test profiles of the form c r^p e^{-rate r} normalized so that the
/// built state has unit norm for real A: two-profile j >= 1 uses
/// f1 ~ r, f2 ~ r^2 with |f|^2 = 1/4 each; four-profile adds f3 ~ r^3 and
/// f4 ~ r e^{-rate r / 2}; j = 0 uses f2 ~ r^2, f4 ~ r with 1/2 each.
RadialProfiles default_profiles(int j, ProfileForm form = ProfileForm::TwoProfile, double rate = 1.0);

/// sqrt((2j + 1) / 4 pi), the angular normalization inside every state.
double angular_norm(HalfInt j);

/// Psi^A = (1/sqrt2) [T+ x Phi^{-1/2} + c T- x Phi^{+1/2}] with D^j_{-m, sigma}
/// angular factors; c = mu delta e^{iA} for the two-profile form and
/// delta e^{iA} for the four-profile and j = 0 forms.
/// Throws std::domain_error for invalid labels or for j = 0 with f1 or f3 set.
SpectralField build_psi_A(const QuantumNumbers& q, const RadialProfiles& rad);

/// Single-isocomponent Abelian state with slots
/// (f1 D_{eg-1/2}, f2 D_{eg+1/2}, mu f2 D_{eg-1/2}, mu f1 D_{eg+1/2}),
/// first D index -m. eg must be 0 or +-1/2 with j - eg + 1/2 integral.
/// A slot pair whose D index exceeds j is dropped (j = 0 with eg = +-1/2);
/// if both would be dropped std::domain_error is thrown.
SpectralField build_abelian_phi(HalfInt eg, HalfInt j, HalfInt m, int mu, const RadialProfiles& rad);

struct AbelianDecomposition {
  double scale = 0.0;  // 1/sqrt2
  cd coef_minus;       // coefficient of T+ x Phi^{-1/2}
  cd coef_plus;        // coefficient of T- x Phi^{+1/2}
  SpectralField phi_minus{Sector::Abelian};
  SpectralField phi_plus{Sector::Abelian};

  SpectralField reconstruct() const;
};

/// Splits a two-profile (or j = 0) doublet state into its Abelian
/// constituents. Throws ContractError for any other spectral shape.
AbelianDecomposition decompose_to_abelian(const SpectralField& psi);

struct LabeledState {
  QuantumNumbers q;
  SpectralField field;
};

/// States at A' from the delta = +1 and delta = -1 states at A:
/// Psi^{A'}_d = (1 + d e^{i(A'-A)})/2 Psi^A_+ + (1 - d e^{i(A'-A)})/2 Psi^A_-.
/// Returns {delta = +1, delta = -1}. Throws std::invalid_argument unless the
/// input holds exactly one state of each delta sharing j, m, mu, A.
std::vector<LabeledState> change_basis(std::span<const LabeledState> at_A, cd A_prime);

}  // namespace isodoublet
