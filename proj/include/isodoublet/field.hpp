#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isodoublet/angular.hpp"
#include "isodoublet/linalg.hpp"
#include "isodoublet/quadrature.hpp"
#include "isodoublet/radial.hpp"

namespace isodoublet {

/// Raised when an operation is applied to a field it is not defined for
/// (frame mismatch, wrong sector, unrecognized spectral shape).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class GaugeFrame { Schwinger, Dirac, Cartesian };
std::string_view frame_name(GaugeFrame f);

/// NonAbelian fields use both isocomponents; Abelian fields carry a single
/// bispinor stored in isocomponent 0 and a charge label eg.
enum class Sector { NonAbelian, Abelian };

/// coef * profile(r) * D^j_{M,sigma}(phi, theta, 0) in component iso*4 + slot.
/// The stored field is r * Psi (the 1/r prefactor is dropped), so integrals
/// use the measure dr dOmega.
struct SpectralTerm {
  int iso = 0;
  int slot = 0;
  AngularIndex index;
  ProfilePtr profile;
  cd coef{1.0, 0.0};
};

class SpectralField {
 public:
  explicit SpectralField(Sector sector = Sector::NonAbelian, GaugeFrame frame = GaugeFrame::Schwinger,
                         HalfInt eg = 0);

  Sector sector() const { return sector_; }
  GaugeFrame frame() const { return frame_; }
  HalfInt eg() const { return eg_; }
  const std::vector<SpectralTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Validates the index, iso/slot range and the sector (Abelian: iso 0).
  void add(SpectralTerm t);
  /// Sums terms with equal (iso, slot, index, profile) and drops the ones
  /// whose coefficient is below 1e-15 of the largest.
  void merge();

  Spinor8 operator()(double r, double theta, double phi) const;

  /// Eigenvalue of (i sigma^12 + t3) (NonAbelian) or (i sigma^12 - eg)
  /// (Abelian) on a component.
  HalfInt slot_lambda(int iso, int slot) const;
  /// Every term has sigma == -slot_lambda(iso, slot). The angular operators
  /// act exactly only on such fields.
  bool well_formed() const;
  void require_well_formed(std::string_view op) const;

  SpectralField scaled(cd factor) const;
  SpectralField relabeled(HalfInt eg) const;
  SpectralField& operator+=(const SpectralField& other);

 private:
  Sector sector_;
  GaugeFrame frame_;
  HalfInt eg_;
  std::vector<SpectralTerm> terms_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(cd c, const SpectralField& f);

/// Field given only by its values; used for position-dependent frame maps.
struct PointwiseField {
  GaugeFrame frame = GaugeFrame::Schwinger;
  std::function<Spinor8(double r, double theta, double phi)> eval;

  Spinor8 operator()(double r, double theta, double phi) const { return eval(r, theta, phi); }
};

PointwiseField as_pointwise(const SpectralField& f);

/// Field values on every node of a ProductGrid, split into real and
/// imaginary arrays per component for the SIMD reductions.
struct SampledField {
  GaugeFrame frame = GaugeFrame::Schwinger;
  std::array<std::vector<double>, 8> re;
  std::array<std::vector<double>, 8> im;

  std::size_t size() const { return re[0].size(); }
  Spinor8 at(std::size_t node) const;
  void set(std::size_t node, const Spinor8& v);
};

SampledField sample(const SpectralField& f, const ProductGrid& grid);
SampledField sample(const PointwiseField& f, const ProductGrid& grid);

/// sum over nodes and components of w * conj(a) * b.
cd inner_product(const SampledField& a, const SampledField& b, const ProductGrid& grid);
cd inner_product(const SpectralField& a, const SpectralField& b, const ProductGrid& grid);
double norm2(const SampledField& a, const ProductGrid& grid);
/// max over nodes and components of |a - b|.
double max_abs_diff(const SampledField& a, const SampledField& b);
double max_abs_diff(const SpectralField& a, const SpectralField& b, const ProductGrid& grid);
/// max over nodes and components of |a - c b|.
double max_abs_diff_scaled(const SpectralField& a, cd c, const SpectralField& b, const ProductGrid& grid);

namespace spectral {

/// (iso x bispinor) matrix acting on every term; exact.
SpectralField apply_matrix(const Mat8& m, const SpectralField& f);
/// Psi(x) -> Psi(antipode(x)), using D(antipode) = phase * D_{M,-sigma}.
SpectralField antipodal(const SpectralField& f);
/// d/dtheta on every term (derivative recursion).
SpectralField d_theta(const SpectralField& f);
/// (M - sigma cos theta) / sin theta on every term (ratio recursion), which
/// equals (i d_phi + lambda cos theta) / sin theta on well-formed fields.
SpectralField ratio(const SpectralField& f);
/// Multiply the radial profile of every term by fn(r).
SpectralField radial_multiply(const SpectralField& f, const RadialProfile::Fn& fn,
                              const RadialProfile::Fn& fn_derivative = {});
/// Radial derivative of every profile.
SpectralField radial_derivative(const SpectralField& f);

}  // namespace spectral

}  // namespace isodoublet
