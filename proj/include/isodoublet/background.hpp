#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "isodoublet/angular.hpp"
#include "isodoublet/radial.hpp"

namespace isodoublet {

/// Monopole background in flat space. Profiles are real-valued in use; the
/// imaginary part of a RadialProfile is ignored here.
struct BackgroundConfig {
  double g_mag = 1.0;   // A_phi = g cos(theta)
  double e_coup = 1.0;  // gauge coupling
  double kappa = 0.0;   // scalar coupling
  double mass = 1.0;    // fermion mass
  ProfilePtr profile_K;
  ProfilePtr profile_F;
  ProfilePtr profile_Phi;

  /// Every profile set and finite on the given radii.
  void validate(const std::vector<double>& radii) const;
};

/// K = -1/(e r^2), F = Phi = 0: the Schwinger-gauge potential reduces to the
/// embedded Abelian one.
BackgroundConfig special_monopole(double e_coup = 1.0, double mass = 1.0);

/// F_{theta phi} = -g sin(theta).
double abelian_field_strength(const BackgroundConfig& cfg, double theta);

/// max over the grid's theta nodes of |d/dtheta [sin(theta) F / sin^2(theta)]|
/// for F = -g sin(theta), differentiated analytically.
double maxwell_residual(const BackgroundConfig& cfg, const SphereGrid& grid);
/// Same for a user-supplied F_{theta phi}(theta) and its derivative.
double maxwell_residual(const std::function<double(double)>& field,
                        const std::function<double(double)>& field_derivative, const SphereGrid& grid);

using IsoVector = Eigen::Vector3d;

struct SchwingerPotential {
  IsoVector w_theta;
  IsoVector w_phi;
};

/// W_theta = (0, r^2 K + 1/e, 0), W_phi = (-(r^2 K + 1/e) sin(theta), 0, cos(theta)/e).
/// Throws std::domain_error for r <= 0.
SchwingerPotential schwinger_potential(const BackgroundConfig& cfg, double r, double theta);

/// (e r^2 K + 1) / r, the coefficient that mixes the two isocomponents in the
/// Dirac equation.
double mixing_coefficient(const BackgroundConfig& cfg, double r);

/// Coordinates x^mu = (t, r, theta, phi). A[mu][a] is the potential, and
/// dA[nu][mu][a] = d_nu A^{(a)}_mu.
using IsoPotential = std::array<IsoVector, 4>;
using IsoPotentialGradient = std::array<IsoPotential, 4>;

struct GaugePotential {
  std::function<IsoPotential(double r, double theta, double phi)> value;
  /// Analytic gradient; when empty a 5-point central difference with
  /// h = 1e-4 is used.
  std::function<IsoPotentialGradient(double r, double theta, double phi)> gradient;
  /// A^{(a)} = (0, 0, A) for an Abelian potential A.
  bool embedded_abelian = false;
};

/// A^{(3)}_phi = g cos(theta), every other component zero.
GaugePotential embedded_abelian_potential(const BackgroundConfig& cfg);
/// The Schwinger-gauge potential above, as a GaugePotential.
GaugePotential schwinger_gauge_potential(const BackgroundConfig& cfg);

/// F[a][mu][nu] = d_mu A^a_nu - d_nu A^a_mu + e eps_abc A^b_mu A^c_nu.
using FieldStrength = std::array<std::array<std::array<double, 4>, 4>, 3>;

struct FieldStrengthSample {
  double r, theta, phi;
  FieldStrength F;
  /// The e eps_abc A^b A^c part alone.
  FieldStrength commutator;
};

std::vector<FieldStrengthSample> ym_field_strength(const GaugePotential& potential, double e_coup,
                                                   const std::vector<double>& radii, const SphereGrid& grid);

/// Parses a profile description: "special" (needs e), "zero", "const:<v>",
/// "yukawa:<a>,<b>" for a e^{-b r} / r, or "table:<path>" (two or three
/// whitespace-separated columns r, re [, im]).
ProfilePtr parse_background_profile(const std::string& spec, double e_coup);

/// Background from key-value pairs (g_mag, e_coup, kappa, mass, profile_K,
/// profile_F, profile_Phi); missing keys take the special-monopole defaults.
BackgroundConfig background_from_keys(const std::map<std::string, std::string>& kv);

}  // namespace isodoublet
