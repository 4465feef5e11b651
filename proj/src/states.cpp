#include "isodoublet/states.hpp"

#include <cmath>
#include <stdexcept>

namespace isodoublet {

void QuantumNumbers::validate() const {
  if (j < 0 || std::abs(m) > j) throw std::domain_error("QuantumNumbers: need j >= 0 and |m| <= j");
  if (2 * j > kMaxTwiceJ) throw std::domain_error("QuantumNumbers: j too large");
  if (delta != 1 && delta != -1) throw std::domain_error("QuantumNumbers: delta must be +-1");
  if (mu && *mu != 1 && *mu != -1) throw std::domain_error("QuantumNumbers: mu must be +-1");
  if (j == 0 && mu) throw std::domain_error("QuantumNumbers: j = 0 states carry no mu");
  if (!std::isfinite(A.real()) || !std::isfinite(A.imag()))
    throw std::domain_error("QuantumNumbers: A must be finite");
  if (!std::isfinite(epsilon)) throw std::domain_error("QuantumNumbers: epsilon must be finite");
}

RadialProfiles default_profiles(int j, ProfileForm form, double rate) {
  if (j < 0) throw std::domain_error("default_profiles: j must be >= 0");
  RadialProfiles p;
  if (j == 0) {
    p.f2 = exp_poly_profile(2, rate, 0.5);
    p.f4 = exp_poly_profile(1, rate, 0.5);
    return p;
  }
  p.f1 = exp_poly_profile(1, rate, 0.25);
  p.f2 = exp_poly_profile(2, rate, 0.25);
  if (form == ProfileForm::FourProfile) {
    p.f3 = exp_poly_profile(3, rate, 0.25);
    p.f4 = exp_poly_profile(1, 0.5 * rate, 0.25);
  }
  return p;
}

double angular_norm(HalfInt j) { return std::sqrt((2.0 * j.value() + 1.0) / (4.0 * kPi)); }

namespace {

void put(SpectralField& f, int iso, int slot, HalfInt j, HalfInt M, HalfInt sigma, const ProfilePtr& p, cd coef) {
  if (!p || coef == cd{}) return;
  const AngularIndex idx{j, M, sigma};
  if (!idx.valid()) return;
  f.add({iso, slot, idx, p, coef});
}

}  // namespace

SpectralField build_psi_A(const QuantumNumbers& q, const RadialProfiles& rad) {
  q.validate();
  const HalfInt j = q.j, M = -q.m;
  const HalfInt s_m = -1, s_0 = 0, s_p = 1;
  const double c = angular_norm(j) / std::sqrt(2.0);
  const cd eA = std::exp(kI * q.A);
  SpectralField f(Sector::NonAbelian);

  if (q.j == 0) {
    if (rad.f1 || rad.f3) throw std::domain_error("build_psi_A: j = 0 admits only f2 and f4");
    if (!rad.f2 && !rad.f4) throw std::invalid_argument("build_psi_A: j = 0 needs f2 or f4");
    const cd low = c * double(q.delta) * eA;
    put(f, 0, 1, j, M, s_0, rad.f2, c);
    put(f, 0, 3, j, M, s_0, rad.f4, c);
    put(f, 1, 0, j, M, s_0, rad.f4, low);
    put(f, 1, 2, j, M, s_0, rad.f2, low);
    return f;
  }

  if (!rad.f1 || !rad.f2) throw std::invalid_argument("build_psi_A: f1 and f2 are required for j >= 1");
  const bool four = rad.f3 || rad.f4;
  if (four) {
    if (!rad.f3 || !rad.f4) throw std::invalid_argument("build_psi_A: the four-profile form needs f3 and f4");
    const cd low = c * double(q.delta) * eA;
    put(f, 0, 0, j, M, s_m, rad.f1, c);
    put(f, 0, 1, j, M, s_0, rad.f2, c);
    put(f, 0, 2, j, M, s_m, rad.f3, c);
    put(f, 0, 3, j, M, s_0, rad.f4, c);
    put(f, 1, 0, j, M, s_0, rad.f4, low);
    put(f, 1, 1, j, M, s_p, rad.f3, low);
    put(f, 1, 2, j, M, s_0, rad.f2, low);
    put(f, 1, 3, j, M, s_p, rad.f1, low);
    return f;
  }

  if (!q.mu) throw std::invalid_argument("build_psi_A: the two-profile form needs mu");
  const double mu = *q.mu;
  const cd low = c * mu * double(q.delta) * eA;
  put(f, 0, 0, j, M, s_m, rad.f1, c);
  put(f, 0, 1, j, M, s_0, rad.f2, c);
  put(f, 0, 2, j, M, s_m, rad.f2, c * mu);
  put(f, 0, 3, j, M, s_0, rad.f1, c * mu);
  put(f, 1, 0, j, M, s_0, rad.f1, low);
  put(f, 1, 1, j, M, s_p, rad.f2, low);
  put(f, 1, 2, j, M, s_0, rad.f2, low * mu);
  put(f, 1, 3, j, M, s_p, rad.f1, low * mu);
  return f;
}

SpectralField build_abelian_phi(HalfInt eg, HalfInt j, HalfInt m, int mu, const RadialProfiles& rad) {
  if (eg != HalfInt{0} && eg != HalfInt::half(1) && eg != HalfInt::half(-1))
    throw std::domain_error("build_abelian_phi: eg must be 0 or +-1/2");
  if (mu != 1 && mu != -1) throw std::domain_error("build_abelian_phi: mu must be +-1");
  if (!rad.f1 || !rad.f2) throw std::invalid_argument("build_abelian_phi: f1 and f2 are required");
  const HalfInt half = HalfInt::half(1);
  const HalfInt lo = eg - half, hi = eg + half, M = -m;
  const AngularIndex a{j, M, lo}, b{j, M, hi};
  if (!a.valid() && !b.valid())
    throw std::domain_error("build_abelian_phi: no valid D index for j=" + j.str() + ", m=" + m.str() +
                            ", eg=" + eg.str());
  const double c = angular_norm(j);
  SpectralField f(Sector::Abelian, GaugeFrame::Schwinger, eg);
  put(f, 0, 0, j, M, lo, rad.f1, c);
  put(f, 0, 1, j, M, hi, rad.f2, c);
  put(f, 0, 2, j, M, lo, rad.f2, c * double(mu));
  put(f, 0, 3, j, M, hi, rad.f1, c * double(mu));
  return f;
}

SpectralField AbelianDecomposition::reconstruct() const {
  SpectralField out(Sector::NonAbelian);
  for (auto t : phi_minus.terms()) {
    t.coef *= scale * coef_minus;
    out.add(t);
  }
  for (auto t : phi_plus.terms()) {
    t.iso = 1;
    t.coef *= scale * coef_plus;
    out.add(t);
  }
  out.merge();
  return out;
}

AbelianDecomposition decompose_to_abelian(const SpectralField& psi) {
  if (psi.sector() != Sector::NonAbelian || psi.frame() != GaugeFrame::Schwinger)
    throw ContractError("decompose_to_abelian: needs a Schwinger-frame doublet field");
  if (psi.empty()) throw ContractError("decompose_to_abelian: empty field");

  const HalfInt j = psi.terms().front().index.j;
  const bool j0 = j.twice() == 0;
  std::vector<SpectralTerm> upper, lower;
  for (const auto& t : psi.terms()) {
    if (t.index.j != j) throw ContractError("decompose_to_abelian: mixed j content");
    (t.iso == 0 ? upper : lower).push_back(t);
  }
  if (upper.empty() || upper.size() != lower.size())
    throw ContractError("decompose_to_abelian: isocomponents do not pair up");

  // Partner of an upper term inside the lower isocomponent.
  auto partner = [&](SpectralTerm t) {
    if (j0) {
      if (t.slot == 1) t.slot = 2;
      else if (t.slot == 3) t.slot = 0;
      else throw ContractError("decompose_to_abelian: unexpected j = 0 slot");
    } else {
      t.index.sigma = t.index.sigma + HalfInt{1};
    }
    t.iso = 1;
    return t;
  };

  std::optional<cd> ratio;
  std::vector<bool> used(lower.size(), false);
  for (const auto& u : upper) {
    const SpectralTerm p = partner(u);
    bool found = false;
    for (std::size_t k = 0; k < lower.size(); ++k) {
      const auto& l = lower[k];
      if (used[k] || l.slot != p.slot || l.index != p.index || l.profile != p.profile) continue;
      const cd r = l.coef / u.coef;
      if (ratio && std::abs(r - *ratio) > 1e-12 * std::max(1.0, std::abs(*ratio)))
        throw ContractError("decompose_to_abelian: lower isocomponent is not proportional to the partner map");
      if (!ratio) ratio = r;
      used[k] = found = true;
      break;
    }
    if (!found) throw ContractError("decompose_to_abelian: lower isocomponent has no partner term");
  }

  AbelianDecomposition d;
  d.scale = 1.0 / std::sqrt(2.0);
  d.coef_minus = 1.0;
  d.coef_plus = *ratio;
  d.phi_minus = SpectralField(Sector::Abelian, GaugeFrame::Schwinger, HalfInt::half(-1));
  d.phi_plus = SpectralField(Sector::Abelian, GaugeFrame::Schwinger, HalfInt::half(1));
  for (const auto& u : upper) {
    SpectralTerm a = u;
    a.coef *= std::sqrt(2.0);
    d.phi_minus.add(a);
    SpectralTerm b = partner(u);
    b.iso = 0;
    b.coef = a.coef;
    d.phi_plus.add(b);
  }
  return d;
}

std::vector<LabeledState> change_basis(std::span<const LabeledState> at_A, cd A_prime) {
  if (at_A.size() != 2) throw std::invalid_argument("change_basis: needs exactly the delta = +1 and -1 states");
  const LabeledState* plus = nullptr;
  const LabeledState* minus = nullptr;
  for (const auto& s : at_A) (s.q.delta == 1 ? plus : minus) = &s;
  if (!plus || !minus) throw std::invalid_argument("change_basis: missing a delta partner");
  const auto& a = plus->q;
  const auto& b = minus->q;
  if (a.j != b.j || a.m != b.m || a.mu != b.mu || std::abs(a.A - b.A) > 0.0)
    throw std::invalid_argument("change_basis: partners differ in j, m, mu or A");

  const cd e = std::exp(kI * (A_prime - a.A));
  std::vector<LabeledState> out;
  for (int d : {1, -1}) {
    const cd cp = (1.0 + double(d) * e) / 2.0;
    const cd cm = (1.0 - double(d) * e) / 2.0;
    QuantumNumbers q = a;
    q.delta = d;
    q.A = A_prime;
    out.push_back({q, plus->field.scaled(cp) + minus->field.scaled(cm)});
  }
  return out;
}

}  // namespace isodoublet
