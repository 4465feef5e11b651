#include "isodoublet/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <unordered_map>

#include "isodoublet/simd/kernels.hpp"

namespace isodoublet {

std::string_view frame_name(GaugeFrame f) {
  switch (f) {
    case GaugeFrame::Schwinger: return "schwinger";
    case GaugeFrame::Dirac: return "dirac";
    case GaugeFrame::Cartesian: return "cartesian";
  }
  return "?";
}

SpectralField::SpectralField(Sector sector, GaugeFrame frame, HalfInt eg)
    : sector_(sector), frame_(frame), eg_(sector == Sector::Abelian ? eg : HalfInt{0}) {}

void SpectralField::add(SpectralTerm t) {
  if (t.iso < 0 || t.iso > 1 || t.slot < 0 || t.slot > 3)
    throw std::out_of_range("SpectralField::add: iso must be 0/1 and slot 0..3");
  if (sector_ == Sector::Abelian && t.iso != 0)
    throw ContractError("SpectralField::add: Abelian fields use isocomponent 0 only");
  if (!t.profile) throw std::invalid_argument("SpectralField::add: missing radial profile");
  t.index.validate();
  terms_.push_back(std::move(t));
}

void SpectralField::merge() {
  using Key = std::tuple<int, int, AngularIndex, const RadialProfile*>;
  std::map<Key, std::size_t> seen;
  std::vector<SpectralTerm> out;
  for (auto& t : terms_) {
    Key k{t.iso, t.slot, t.index, t.profile.get()};
    auto it = seen.find(k);
    if (it == seen.end()) {
      seen.emplace(k, out.size());
      out.push_back(t);
    } else {
      out[it->second].coef += t.coef;
    }
  }
  double biggest = 0.0;
  for (const auto& t : out) biggest = std::max(biggest, std::abs(t.coef));
  std::erase_if(out, [&](const SpectralTerm& t) { return std::abs(t.coef) <= 1e-15 * biggest; });
  terms_ = std::move(out);
}

Spinor8 SpectralField::operator()(double r, double theta, double phi) const {
  Spinor8 v = Spinor8::Zero();
  for (const auto& t : terms_) v(t.iso * 4 + t.slot) += t.coef * (*t.profile)(r) * wigner_D(t.index, phi, theta);
  return v;
}

HalfInt SpectralField::slot_lambda(int iso, int slot) const {
  const HalfInt spin = HalfInt::half(slot % 2 == 0 ? 1 : -1);
  if (sector_ == Sector::Abelian) return spin - eg_;
  return spin + HalfInt::half(iso == 0 ? 1 : -1);
}

bool SpectralField::well_formed() const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const SpectralTerm& t) {
    return t.index.sigma == -slot_lambda(t.iso, t.slot);
  });
}

void SpectralField::require_well_formed(std::string_view op) const {
  if (!well_formed())
    throw ContractError(std::string(op) + ": field has a term whose sigma does not match its component");
}

SpectralField SpectralField::scaled(cd factor) const {
  SpectralField out = *this;
  for (auto& t : out.terms_) t.coef *= factor;
  return out;
}

SpectralField SpectralField::relabeled(HalfInt eg) const {
  if (sector_ != Sector::Abelian) throw ContractError("relabeled: only Abelian fields carry eg");
  SpectralField out = *this;
  out.eg_ = eg;
  return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (other.sector_ != sector_ || other.frame_ != frame_ || other.eg_ != eg_)
    throw ContractError("SpectralField +: sector, frame and eg must agree");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  merge();
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a += b.scaled(-1.0); }
SpectralField operator*(cd c, const SpectralField& f) { return f.scaled(c); }

PointwiseField as_pointwise(const SpectralField& f) {
  auto shared = std::make_shared<const SpectralField>(f);
  return {f.frame(), [shared](double r, double t, double p) { return (*shared)(r, t, p); }};
}

Spinor8 SampledField::at(std::size_t node) const {
  Spinor8 v;
  for (int c = 0; c < 8; ++c) v(c) = {re[c][node], im[c][node]};
  return v;
}

void SampledField::set(std::size_t node, const Spinor8& v) {
  for (int c = 0; c < 8; ++c) {
    re[c][node] = v(c).real();
    im[c][node] = v(c).imag();
  }
}

namespace {

SampledField zero_samples(GaugeFrame frame, std::size_t n) {
  SampledField s;
  s.frame = frame;
  for (int c = 0; c < 8; ++c) {
    s.re[c].assign(n, 0.0);
    s.im[c].assign(n, 0.0);
  }
  return s;
}

void require_same_frame(GaugeFrame a, GaugeFrame b, std::string_view op) {
  if (a != b)
    throw ContractError(std::string(op) + ": frame mismatch (" + std::string(frame_name(a)) + " vs " +
                        std::string(frame_name(b)) + ")");
}

}  // namespace

SampledField sample(const SpectralField& f, const ProductGrid& grid) {
  const std::size_t nr = grid.radial.size(), ns = grid.sphere.size();
  SampledField s = zero_samples(f.frame(), grid.size());

  // Each distinct profile and each distinct D-function is evaluated once.
  std::unordered_map<const RadialProfile*, std::vector<cd>> radial_cache;
  std::map<AngularIndex, std::vector<cd>> angular_cache;
  for (const auto& t : f.terms()) {
    auto& rv = radial_cache[t.profile.get()];
    if (rv.empty()) {
      rv.resize(nr);
      for (std::size_t i = 0; i < nr; ++i) rv[i] = (*t.profile)(grid.radial.r[i]);
    }
    auto& av = angular_cache[t.index];
    if (av.empty()) {
      av.resize(ns);
      for (std::size_t k = 0; k < ns; ++k) {
        const auto p = grid.sphere.node(k);
        av[k] = wigner_D(t.index, p.phi, p.theta);
      }
    }
    const int c = t.iso * 4 + t.slot;
    double* re = s.re[c].data();
    double* im = s.im[c].data();
    for (std::size_t i = 0; i < nr; ++i) {
      const cd a = t.coef * rv[i];
      for (std::size_t k = 0; k < ns; ++k) {
        const cd v = a * av[k];
        re[i * ns + k] += v.real();
        im[i * ns + k] += v.imag();
      }
    }
  }
  return s;
}

SampledField sample(const PointwiseField& f, const ProductGrid& grid) {
  SampledField s = zero_samples(f.frame, grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const auto p = grid.angles(n);
    s.set(n, f(grid.r(n), p.theta, p.phi));
  }
  return s;
}

cd inner_product(const SampledField& a, const SampledField& b, const ProductGrid& grid) {
  require_same_frame(a.frame, b.frame, "inner_product");
  if (a.size() != grid.size() || b.size() != grid.size())
    throw std::invalid_argument("inner_product: samples do not match the grid");
  cd total{};
  for (int c = 0; c < 8; ++c)
    total += simd::weighted_cdot(grid.weights, {a.re[c], a.im[c]}, {b.re[c], b.im[c]});
  return total;
}

cd inner_product(const SpectralField& a, const SpectralField& b, const ProductGrid& grid) {
  return inner_product(sample(a, grid), sample(b, grid), grid);
}

double norm2(const SampledField& a, const ProductGrid& grid) {
  double total = 0.0;
  for (int c = 0; c < 8; ++c) total += simd::weighted_norm2(grid.weights, {a.re[c], a.im[c]});
  return total;
}

double max_abs_diff(const SampledField& a, const SampledField& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: sample sizes differ");
  double m = 0.0;
  for (int c = 0; c < 8; ++c)
    m = std::max(m, simd::max_abs_diff({a.re[c], a.im[c]}, {b.re[c], b.im[c]}));
  return m;
}

double max_abs_diff(const SpectralField& a, const SpectralField& b, const ProductGrid& grid) {
  return max_abs_diff(sample(a, grid), sample(b, grid));
}

double max_abs_diff_scaled(const SpectralField& a, cd c, const SpectralField& b, const ProductGrid& grid) {
  return max_abs_diff(sample(a, grid), sample(b.scaled(c), grid));
}

namespace spectral {

namespace {

SpectralField empty_like(const SpectralField& f) { return SpectralField(f.sector(), f.frame(), f.eg()); }

void add_if_valid(SpectralField& out, const SpectralTerm& base, HalfInt sigma, cd coef) {
  if (coef == cd{}) return;
  SpectralTerm t = base;
  t.index.sigma = sigma;
  if (!t.index.valid()) return;
  t.coef = coef;
  out.add(std::move(t));
}

}  // namespace

SpectralField apply_matrix(const Mat8& m, const SpectralField& f) {
  SpectralField out = empty_like(f);
  for (const auto& t : f.terms()) {
    const int col = t.iso * 4 + t.slot;
    for (int row = 0; row < 8; ++row) {
      const cd e = m(row, col);
      if (e == cd{}) continue;
      if (f.sector() == Sector::Abelian && row >= 4)
        throw ContractError("apply_matrix: matrix mixes the isocomponents of an Abelian field");
      SpectralTerm u = t;
      u.iso = row / 4;
      u.slot = row % 4;
      u.coef = e * t.coef;
      out.add(std::move(u));
    }
  }
  out.merge();
  return out;
}

SpectralField antipodal(const SpectralField& f) {
  SpectralField out = empty_like(f);
  for (const auto& t : f.terms()) {
    SpectralTerm u = t;
    u.index.sigma = -t.index.sigma;
    u.coef = t.coef * antipodal_phase(t.index.j, t.index.m);
    out.add(std::move(u));
  }
  return out;
}

SpectralField d_theta(const SpectralField& f) {
  SpectralField out = empty_like(f);
  for (const auto& t : f.terms())
    for (const auto& e : derivative_expansion(t.index.j, t.index.sigma)) add_if_valid(out, t, e.sigma, t.coef * e.coef);
  out.merge();
  return out;
}

SpectralField ratio(const SpectralField& f) {
  SpectralField out = empty_like(f);
  for (const auto& t : f.terms())
    for (const auto& e : ratio_expansion(t.index.j, t.index.sigma)) add_if_valid(out, t, e.sigma, t.coef * e.coef);
  out.merge();
  return out;
}

SpectralField radial_multiply(const SpectralField& f, const RadialProfile::Fn& fn,
                              const RadialProfile::Fn& fn_derivative) {
  SpectralField out = empty_like(f);
  std::unordered_map<const RadialProfile*, ProfilePtr> done;
  for (const auto& t : f.terms()) {
    auto& p = done[t.profile.get()];
    if (!p) p = multiply(t.profile, fn, fn_derivative);
    SpectralTerm u = t;
    u.profile = p;
    out.add(std::move(u));
  }
  return out;
}

SpectralField radial_derivative(const SpectralField& f) {
  SpectralField out = empty_like(f);
  std::unordered_map<const RadialProfile*, ProfilePtr> done;
  for (const auto& t : f.terms()) {
    auto& p = done[t.profile.get()];
    if (!p) p = derivative_of(t.profile);
    SpectralTerm u = t;
    u.profile = p;
    out.add(std::move(u));
  }
  return out;
}

}  // namespace spectral

}  // namespace isodoublet
