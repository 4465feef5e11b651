#include "isodoublet/operators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/LU>

namespace isodoublet {

Mat4 pbisp(const Conventions& conv) {
  Mat4 b = Mat4::Zero();
  for (int k = 0; k < 4; ++k) b(k, 3 - k) = -1.0;
  return conv.pbisp_phase * b;
}

Mat2 pi_A(cd A) {
  Mat2 p;
  p << 0.0, std::exp(-kI * A), std::exp(kI * A), 0.0;
  return p;
}

Mat2 pi_A_cartesian(cd A, double theta, double phi) { return -kI * exp_sigma_n(-kI * A, theta, phi); }

Mat2 pi_A_dirac(cd A, double phi) {
  Mat2 p;
  p << 0.0, -kI * std::exp(-kI * (A + phi)), kI * std::exp(kI * (A + phi)), 0.0;
  return p;
}

Mat2 DiscreteOperator::iso_at(double theta, double phi) const {
  if (constant_iso) return *constant_iso;
  return iso_factor(theta, phi);
}

DiscreteOperator make_N_A(cd A, GaugeFrame frame, const Conventions& conv) {
  DiscreteOperator op;
  op.name = "N_A";
  op.frame = frame;
  op.bispinor = pbisp(conv);
  switch (frame) {
    case GaugeFrame::Schwinger:
      op.constant_iso = pi_A(A);
      op.iso_factor = [p = *op.constant_iso](double, double) { return p; };
      break;
    case GaugeFrame::Dirac:
      op.iso_factor = [A](double, double phi) { return pi_A_dirac(A, phi); };
      break;
    case GaugeFrame::Cartesian:
      op.iso_factor = [A](double theta, double phi) { return pi_A_cartesian(A, theta, phi); };
      break;
  }
  return op;
}

DiscreteOperator make_parity(const Conventions& conv) {
  DiscreteOperator op;
  op.name = "P_bisp x P";
  op.constant_iso = Mat2::Identity();
  op.iso_factor = [](double, double) -> Mat2 { return Mat2::Identity(); };
  op.bispinor = pbisp(conv);
  return op;
}

DiscreteOperator make_M(const Conventions& conv) {
  DiscreteOperator op = make_parity(conv);
  op.name = "M";
  op.flips_abelian_charge = true;
  return op;
}

namespace {

void require_frame(GaugeFrame op, GaugeFrame field, std::string_view what) {
  if (op != field)
    throw ContractError(std::string(what) + ": operator frame " + std::string(frame_name(op)) +
                        " does not match field frame " + std::string(frame_name(field)));
}

// pi-hat: Phi^{eg} -> Phi^{-eg}, realized as sigma -> sigma - 2 eg.
SpectralField flip_charge(const SpectralField& f) {
  const HalfInt eg = f.eg();
  SpectralField out(Sector::Abelian, f.frame(), -eg);
  for (auto t : f.terms()) {
    t.index.sigma = t.index.sigma - eg - eg;
    if (!t.index.valid()) throw ContractError("pi-hat: flipped D index is outside the j multiplet");
    out.add(std::move(t));
  }
  return out;
}

}  // namespace

SpectralField apply_discrete(const DiscreteOperator& op, const SpectralField& psi) {
  require_frame(op.frame, psi.frame(), "apply_discrete");
  if (!op.constant_iso) throw ContractError("apply_discrete: position-dependent operator needs a pointwise field");
  const bool abelian = psi.sector() == Sector::Abelian;
  if (op.flips_abelian_charge && !abelian) throw ContractError("apply_discrete: M acts on Abelian fields only");
  if (abelian && !op.constant_iso->isIdentity(0.0))
    throw ContractError("apply_discrete: an isotopic matrix cannot act on an Abelian field");

  SpectralField moved = op.point_map == PointMap::Antipodal ? spectral::antipodal(psi) : psi;
  SpectralField out = spectral::apply_matrix(kron(*op.constant_iso, op.bispinor), moved);
  // Antipode plus the anti-diagonal bispinor factor carries Phi^{eg} into the
  // shape of Phi^{-eg}.
  if (abelian && op.point_map == PointMap::Antipodal) out = out.relabeled(-psi.eg());
  if (op.flips_abelian_charge) out = flip_charge(out);
  return out;
}

PointwiseField apply_discrete(const DiscreteOperator& op, const PointwiseField& psi) {
  require_frame(op.frame, psi.frame, "apply_discrete");
  if (op.flips_abelian_charge) throw ContractError("apply_discrete: M needs a spectral field");
  return {psi.frame, [op, psi](double r, double theta, double phi) -> Spinor8 {
            const Mat8 m = kron(op.iso_at(theta, phi), op.bispinor);
            if (op.point_map == PointMap::Identity) return m * psi(r, theta, phi);
            const auto a = antipode(theta, phi);
            return m * psi(r, a.theta, a.phi);
          }};
}

SpectralField apply_J(const SpectralField& psi, JComponent which) {
  if (psi.frame() != GaugeFrame::Schwinger) throw ContractError("apply_J: spectral J needs the Schwinger frame");
  if (which == JComponent::J3) {
    SpectralField out(psi.sector(), psi.frame(), psi.eg());
    for (auto t : psi.terms()) {
      t.coef *= -t.index.m.value();
      if (t.coef != cd{}) out.add(std::move(t));
    }
    return out;
  }
  psi.require_well_formed("apply_J");
  const SpectralField lowered = spectral::d_theta(psi) + spectral::ratio(psi);
  const SpectralField back = spectral::d_theta(lowered) - spectral::ratio(lowered);
  SpectralField diag(psi.sector(), psi.frame(), psi.eg());
  for (auto t : psi.terms()) {
    const double s = t.index.sigma.value();
    t.coef *= s * (s + 1.0);
    if (t.coef != cd{}) diag.add(std::move(t));
  }
  return diag - back;
}

namespace {

Mat8 bispinor_only(const Mat4& g) { return kron(Mat2::Identity(), g); }

SpectralField sigma_operator(const SpectralField& psi) {
  psi.require_well_formed("Sigma");
  const Mat8 ig1 = bispinor_only(kI * gamma::g1());
  const Mat8 g2 = bispinor_only(gamma::g2());
  SpectralField a = spectral::apply_matrix(ig1, spectral::d_theta(psi));
  SpectralField b = spectral::apply_matrix(g2, spectral::ratio(psi));
  return a + b;
}

}  // namespace

SpectralField apply_K(const SpectralField& psi) {
  if (psi.frame() != GaugeFrame::Schwinger) throw ContractError("apply_K: needs the Schwinger frame");
  return spectral::apply_matrix(bispinor_only(kI * gamma::g0() * gamma::g3()), sigma_operator(psi));
}

SpectralField dirac_residual(const SpectralField& psi, double epsilon, const BackgroundConfig& cfg) {
  if (psi.sector() != Sector::NonAbelian || psi.frame() != GaugeFrame::Schwinger)
    throw ContractError("dirac_residual: needs a Schwinger-frame doublet field");
  if (!cfg.profile_K || !cfg.profile_F || !cfg.profile_Phi)
    throw std::invalid_argument("dirac_residual: background profiles missing");
  const Mat2 t1 = 0.5 * pauli::sigma1(), t2 = 0.5 * pauli::sigma2(), t3 = 0.5 * pauli::sigma3();
  const Mat4 g0 = gamma::g0();
  const double e = cfg.e_coup, kappa = cfg.kappa;
  auto F = cfg.profile_F, Phi = cfg.profile_Phi;

  SpectralField out = spectral::apply_matrix(bispinor_only(epsilon * g0 - cfg.mass * Mat4::Identity()), psi);
  out += spectral::radial_multiply(spectral::apply_matrix(kron(t3, g0), psi),
                                   [e, F](double r) { return cd(e * r * (*F)(r).real()); });
  out += spectral::apply_matrix(bispinor_only(kI * gamma::g3()), spectral::radial_derivative(psi));
  out += spectral::radial_multiply(sigma_operator(psi), [](double r) { return cd(1.0 / r); });
  const Mat8 mixing = kron(t2, gamma::g1()) - kron(t1, gamma::g2());
  out += spectral::radial_multiply(spectral::apply_matrix(mixing, psi),
                                   [cfg](double r) { return cd(mixing_coefficient(cfg, r)); });
  out += spectral::radial_multiply(spectral::apply_matrix(kron(t3, Mat4::Identity()), psi),
                                   [kappa, Phi](double r) { return cd(-kappa * r * (*Phi)(r).real()); });
  return out;
}

Mat2 GaugeMap::at(double theta, double phi) const {
  const cd d = A_prime - A;
  if (frame == GaugeFrame::Cartesian) return std::exp(kI * d / 2.0) * exp_sigma_n(-kI * d / 2.0, theta, phi);
  Mat2 u = Mat2::Identity();
  u(1, 1) = std::exp(kI * d);
  return u;
}

GaugeMap make_U(cd A_prime, cd A, GaugeFrame frame) { return {frame, A_prime, A}; }

SpectralField apply_gauge(const GaugeMap& u, const SpectralField& psi) {
  require_frame(u.frame, psi.frame(), "apply_gauge");
  if (u.position_dependent()) throw ContractError("apply_gauge: the Cartesian map needs a pointwise field");
  if (psi.sector() != Sector::NonAbelian) throw ContractError("apply_gauge: needs a doublet field");
  return spectral::apply_matrix(kron(u.at(0.0, 0.0), Mat4::Identity()), psi);
}

PointwiseField apply_gauge(const GaugeMap& u, const PointwiseField& psi) {
  require_frame(u.frame, psi.frame, "apply_gauge");
  return {psi.frame, [u, psi](double r, double theta, double phi) -> Spinor8 {
            return kron(u.at(theta, phi), Mat4::Identity()) * psi(r, theta, phi);
          }};
}

Mat2 cartesian_transport(double theta, double phi) {
  Mat2 az = Mat2::Zero();
  az(0, 0) = std::exp(-kI * phi / 2.0);
  az(1, 1) = std::exp(kI * phi / 2.0);
  Mat2 pol;
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  pol << c, -s, s, c;
  return az * pol;
}

PointwiseField to_cartesian(const SpectralField& schwinger_field) {
  if (schwinger_field.frame() != GaugeFrame::Schwinger || schwinger_field.sector() != Sector::NonAbelian)
    throw ContractError("to_cartesian: needs a Schwinger-frame doublet field");
  const PointwiseField p = as_pointwise(schwinger_field);
  return {GaugeFrame::Cartesian, [p](double r, double theta, double phi) -> Spinor8 {
            return kron(cartesian_transport(theta, phi), Mat4::Identity()) * p(r, theta, phi);
          }};
}

PointwiseField from_cartesian(const PointwiseField& cartesian_field) {
  require_frame(GaugeFrame::Cartesian, cartesian_field.frame, "from_cartesian");
  return {GaugeFrame::Schwinger, [p = cartesian_field](double r, double theta, double phi) -> Spinor8 {
            return kron(cartesian_transport(theta, phi).adjoint(), Mat4::Identity()) * p(r, theta, phi);
          }};
}

double verify_conjugation(cd A, GaugeFrame frame, std::span<const PolarPoint> points, const Conventions& conv) {
  const DiscreteOperator na = make_N_A(A, frame, conv);
  const DiscreteOperator n0 = make_N_A(0.0, frame, conv);
  const GaugeMap u = make_U(A, 0.0, frame);
  double worst = 0.0;
  for (const auto& x : points) {
    const auto y = antipode(x.theta, x.phi);
    const Mat2 rhs = u.at(x.theta, x.phi) * n0.iso_at(x.theta, x.phi) * u.at(y.theta, y.phi).inverse();
    worst = std::max(worst, max_abs_diff(na.iso_at(x.theta, x.phi), rhs));
  }
  return worst;
}

std::vector<PolarPoint> sample_points(std::size_t n, std::uint64_t seed, bool near_poles) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> th(0.05, kPi - 0.05), ph(0.0, 2.0 * kPi);
  std::vector<PolarPoint> out;
  out.reserve(n);
  if (near_poles) {
    out.push_back({0.05, 0.3});
    out.push_back({kPi - 0.05, 4.1});
  }
  while (out.size() < n) {
    const double t = th(rng);
    out.push_back({t, ph(rng)});
  }
  out.resize(n);
  return out;
}

ObservableSpec scalar_observable() {
  return {"1", [](double, double, double) -> Mat2 { return Mat2::Identity(); }, Mat4::Identity()};
}

ObservableSpec position_observable(int axis) {
  if (axis < 0 || axis > 2) throw std::out_of_range("position_observable: axis must be 0, 1 or 2");
  static const char* names[] = {"x", "y", "z"};
  return {names[axis],
          [axis](double r, double theta, double phi) -> Mat2 {
            const double s = std::sin(theta);
            const double v = axis == 0 ? r * s * std::cos(phi) : axis == 1 ? r * s * std::sin(phi) : r * std::cos(theta);
            return v * Mat2::Identity();
          },
          Mat4::Identity()};
}

std::string_view omega_name(OmegaClass c) {
  switch (c) {
    case OmegaClass::Plus: return "+1";
    case OmegaClass::Minus: return "-1";
    case OmegaClass::Unclassified: return "unclassified";
  }
  return "?";
}

namespace {

template <class Transform>
OmegaClass classify(const ObservableSpec& obs, double tol, Transform transform) {
  const auto points = sample_points(200, 0x0b5e7a11ULL, true);
  bool plus = true, minus = true;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double r = 0.25 + 0.05 * static_cast<double>(k % 40);
    const auto x = points[k];
    const auto y = antipode(x.theta, x.phi);
    const auto [lhs, rhs] = transform(obs.iso_block(r, y.theta, y.phi), obs.iso_block(r, x.theta, x.phi));
    plus = plus && max_abs_diff(lhs, rhs) <= tol;
    minus = minus && max_abs_diff(lhs, (-rhs).eval()) <= tol;
  }
  if (plus) return OmegaClass::Plus;
  if (minus) return OmegaClass::Minus;
  return OmegaClass::Unclassified;
}

}  // namespace

OmegaClass classify_omega_A(const ObservableSpec& obs, cd A, const Conventions& conv, double tol) {
  const Mat8 n = kron(pi_A(A), pbisp(conv));
  const Mat8 nd = n.adjoint();
  return classify(obs, tol, [&](const Mat2& g_minus, const Mat2& g_plus) {
    return std::pair<Mat8, Mat8>{nd * kron(g_minus, obs.bispinor_core) * n, kron(g_plus, obs.bispinor_core)};
  });
}

OmegaClass classify_omega0(const ObservableSpec& obs, const Conventions& conv, double tol) {
  const Mat4 b = pbisp(conv);
  const Mat4 bd = b.adjoint();
  return classify(obs, tol, [&](const Mat2& g_minus, const Mat2& g_plus) {
    return std::pair<Mat4, Mat4>{bd * (g_minus(0, 0) * obs.bispinor_core) * b, g_plus(0, 0) * obs.bispinor_core};
  });
}

}  // namespace isodoublet
