#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isodoublet/background.hpp"
#include "isodoublet/field.hpp"

namespace isodoublet {

/// Sign and phase conventions the operators are built from. The defaults are
/// the ones under which every relation in the library holds; the CLI can
/// corrupt them to show that the checks notice.
struct Conventions {
  RecursionSigns recursion;
  cd pbisp_phase{1.0, 0.0};
};

/// Bispinor inversion in the spherical tetrad: -gamma^1 gamma^5, i.e. the
/// anti-diagonal matrix with entries -1, times the convention phase.
Mat4 pbisp(const Conventions& conv = {});

/// sigma1 e^{iA sigma3} = [[0, e^{-iA}], [e^{iA}, 0]].
Mat2 pi_A(cd A);

/// (-i) exp(-iA sigma.n): the Cartesian-frame isotopic factor.
Mat2 pi_A_cartesian(cd A, double theta, double phi);

/// [[0, -i e^{-i(A+phi)}], [i e^{i(A+phi)}, 0]]: the Dirac-frame isotopic factor.
Mat2 pi_A_dirac(cd A, double phi);

enum class PointMap { Identity, Antipodal };

/// (iso factor) x (bispinor factor) x (point map). The iso factor may depend
/// on the angles (Dirac and Cartesian frames); then only pointwise
/// application is possible.
struct DiscreteOperator {
  std::string name;
  GaugeFrame frame = GaugeFrame::Schwinger;
  std::function<Mat2(double theta, double phi)> iso_factor;
  std::optional<Mat2> constant_iso;
  Mat4 bispinor = Mat4::Identity();
  PointMap point_map = PointMap::Antipodal;
  /// Realizes pi-hat: Phi^{eg} -> Phi^{-eg} by relabeling sigma.
  bool flips_abelian_charge = false;

  Mat2 iso_at(double theta, double phi) const;
};

DiscreteOperator make_N_A(cd A, GaugeFrame frame = GaugeFrame::Schwinger, const Conventions& conv = {});
/// P_bisp x P with a trivial isotopic factor.
DiscreteOperator make_parity(const Conventions& conv = {});
/// pi-hat x P_bisp x P on Abelian fields.
DiscreteOperator make_M(const Conventions& conv = {});

/// Exact spectral action; needs a constant iso factor and matching frames.
SpectralField apply_discrete(const DiscreteOperator& op, const SpectralField& psi);
PointwiseField apply_discrete(const DiscreteOperator& op, const PointwiseField& psi);

enum class JComponent { J3, Jsquared };

/// J3 multiplies each term by m = -M. J^2 is composed from the two
/// recursions as -(d_theta - X)(d_theta + X) + sigma(sigma + 1), with X the
/// ratio operator, and so needs a well-formed field.
SpectralField apply_J(const SpectralField& psi, JComponent which);

/// i gamma^0 gamma^3 [i gamma^1 d_theta + gamma^2 (i d_phi + lambda cos)/sin].
SpectralField apply_K(const SpectralField& psi);

/// r times the left-hand side of the matter equation acting on Psi = R / r
/// with the time factor removed:
///   gamma^0 (eps + e r F t3) R + i gamma^3 R' + Sigma R / r
///   + (e r^2 K + 1)/r (gamma^1 t^2 - gamma^2 t^1) R - (m + kappa r Phi t3) R.
SpectralField dirac_residual(const SpectralField& psi, double epsilon, const BackgroundConfig& cfg);

/// U(A', A). Schwinger and Dirac: diag(1, e^{i(A'-A)}).
/// Cartesian: e^{i(A'-A)/2} exp(-i (A'-A)/2 sigma.n).
struct GaugeMap {
  GaugeFrame frame = GaugeFrame::Schwinger;
  cd A_prime, A;

  Mat2 at(double theta, double phi) const;
  bool position_dependent() const { return frame == GaugeFrame::Cartesian; }
};

GaugeMap make_U(cd A_prime, cd A, GaugeFrame frame = GaugeFrame::Schwinger);
SpectralField apply_gauge(const GaugeMap& u, const SpectralField& psi);
PointwiseField apply_gauge(const GaugeMap& u, const PointwiseField& psi);

/// Isotopic rotation e^{-i phi sigma3/2} e^{-i theta sigma2/2} taking sigma3
/// to sigma.n. Double-valued in phi, like the fields it acts on.
Mat2 cartesian_transport(double theta, double phi);
PointwiseField to_cartesian(const SpectralField& schwinger_field);
PointwiseField from_cartesian(const PointwiseField& cartesian_field);

/// max over points of |pi_A(x) - U(A,0)(x) pi_0(x) U(A,0)(-x)^{-1}|.
double verify_conjugation(cd A, GaugeFrame frame, std::span<const PolarPoint> points,
                          const Conventions& conv = {});

/// Deterministic pseudo-random interior points; with `near_poles` the first
/// two are theta = 0.05 and pi - 0.05.
std::vector<PolarPoint> sample_points(std::size_t n, std::uint64_t seed, bool near_poles = false);

/// G(x) = g(x) x G0 with the isotopic block as a function of position.
struct ObservableSpec {
  std::string name;
  std::function<Mat2(double r, double theta, double phi)> iso_block;
  Mat4 bispinor_core = Mat4::Identity();
};

/// Identity in isospin and bispinor space.
ObservableSpec scalar_observable();
/// x^axis (axis 0, 1, 2) times the identity.
ObservableSpec position_observable(int axis);

enum class OmegaClass { Plus, Minus, Unclassified };
std::string_view omega_name(OmegaClass c);

/// Tests (pi_A^+ x P^+) G(-x) (pi_A x P) = Omega G(x) at 200 points
/// (including theta = 0.05 and pi - 0.05) for Omega = +1, then -1.
OmegaClass classify_omega_A(const ObservableSpec& obs, cd A, const Conventions& conv = {}, double tol = 1e-10);

/// The Abelian counterpart on the (0,0) isotopic entry:
/// P^+ g(-x) G0 P = omega0 g(x) G0.
OmegaClass classify_omega0(const ObservableSpec& obs, const Conventions& conv = {}, double tol = 1e-10);

}  // namespace isodoublet
