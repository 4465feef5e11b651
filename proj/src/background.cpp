#include "isodoublet/background.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace isodoublet {

namespace {

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw std::invalid_argument("background: bad number for '" + key + "': '" + text + "'");
  return v;
}

double real_at(const ProfilePtr& p, double r) { return (*p)(r).real(); }

}  // namespace

void BackgroundConfig::validate(const std::vector<double>& radii) const {
  if (!profile_K || !profile_F || !profile_Phi) throw std::invalid_argument("background: profile missing");
  if (!(e_coup != 0.0) || !std::isfinite(e_coup)) throw std::invalid_argument("background: e_coup must be nonzero");
  for (double r : radii)
    for (const auto* p : {&profile_K, &profile_F, &profile_Phi})
      if (!std::isfinite(real_at(*p, r)))
        throw std::domain_error("background: profile not finite at r = " + std::to_string(r));
}

BackgroundConfig special_monopole(double e_coup, double mass) {
  BackgroundConfig cfg;
  cfg.e_coup = e_coup;
  cfg.g_mag = 1.0 / e_coup;
  cfg.mass = mass;
  cfg.profile_K = parse_background_profile("special", e_coup);
  cfg.profile_F = constant_profile(0.0);
  cfg.profile_Phi = constant_profile(0.0);
  return cfg;
}

double abelian_field_strength(const BackgroundConfig& cfg, double theta) { return -cfg.g_mag * std::sin(theta); }

double maxwell_residual(const std::function<double(double)>& field,
                        const std::function<double(double)>& field_derivative, const SphereGrid& grid) {
  double worst = 0.0;
  for (double theta : grid.theta) {
    const double s = std::sin(theta), c = std::cos(theta);
    // d/dtheta [F / sin] = (F' sin - F cos) / sin^2
    const double d = (field_derivative(theta) * s - field(theta) * c) / (s * s);
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

double maxwell_residual(const BackgroundConfig& cfg, const SphereGrid& grid) {
  const double g = cfg.g_mag;
  return maxwell_residual([g](double t) { return -g * std::sin(t); }, [g](double t) { return -g * std::cos(t); },
                          grid);
}

SchwingerPotential schwinger_potential(const BackgroundConfig& cfg, double r, double theta) {
  if (!(r > 0.0)) throw std::domain_error("schwinger_potential: r must be positive");
  const double w = r * r * real_at(cfg.profile_K, r) + 1.0 / cfg.e_coup;
  return {IsoVector(0.0, w, 0.0), IsoVector(-w * std::sin(theta), 0.0, std::cos(theta) / cfg.e_coup)};
}

double mixing_coefficient(const BackgroundConfig& cfg, double r) {
  return (cfg.e_coup * r * r * real_at(cfg.profile_K, r) + 1.0) / r;
}

GaugePotential embedded_abelian_potential(const BackgroundConfig& cfg) {
  const double g = cfg.g_mag;
  GaugePotential p;
  p.embedded_abelian = true;
  p.value = [g](double, double theta, double) {
    IsoPotential a{};
    for (auto& v : a) v.setZero();
    a[3](2) = g * std::cos(theta);
    return a;
  };
  p.gradient = [g](double, double theta, double) {
    IsoPotentialGradient d{};
    for (auto& row : d)
      for (auto& v : row) v.setZero();
    d[2][3](2) = -g * std::sin(theta);
    return d;
  };
  return p;
}

GaugePotential schwinger_gauge_potential(const BackgroundConfig& cfg) {
  GaugePotential p;
  p.value = [cfg](double r, double theta, double) {
    IsoPotential a{};
    for (auto& v : a) v.setZero();
    const auto w = schwinger_potential(cfg, r, theta);
    a[2] = w.w_theta;
    a[3] = w.w_phi;
    return a;
  };
  return p;
}

namespace {

IsoPotentialGradient fd_gradient(const GaugePotential& p, double r, double theta, double phi) {
  constexpr double h = 1e-4;
  IsoPotentialGradient d{};
  d[0] = IsoPotential{};  // static potentials
  for (auto& v : d[0]) v.setZero();
  for (int nu = 1; nu < 4; ++nu) {
    auto at = [&](double step) {
      double x[3] = {r, theta, phi};
      x[nu - 1] += step;
      return p.value(x[0], x[1], x[2]);
    };
    const auto m2 = at(-2 * h), m1 = at(-h), p1 = at(h), p2 = at(2 * h);
    for (int mu = 0; mu < 4; ++mu) d[nu][mu] = (m2[mu] - 8.0 * m1[mu] + 8.0 * p1[mu] - p2[mu]) / (12.0 * h);
  }
  return d;
}

int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  return ((a == 0 && b == 1) || (a == 1 && b == 2) || (a == 2 && b == 0)) ? 1 : -1;
}

}  // namespace

std::vector<FieldStrengthSample> ym_field_strength(const GaugePotential& potential, double e_coup,
                                                   const std::vector<double>& radii, const SphereGrid& grid) {
  std::vector<FieldStrengthSample> out;
  out.reserve(radii.size() * grid.size());
  for (double r : radii) {
    for (std::size_t n = 0; n < grid.size(); ++n) {
      const auto pt = grid.node(n);
      const auto a = potential.value(r, pt.theta, pt.phi);
      const auto d = potential.gradient ? potential.gradient(r, pt.theta, pt.phi)
                                        : fd_gradient(potential, r, pt.theta, pt.phi);
      FieldStrengthSample s{r, pt.theta, pt.phi, {}, {}};
      for (int iso = 0; iso < 3; ++iso) {
        for (int mu = 0; mu < 4; ++mu) {
          for (int nu = 0; nu < 4; ++nu) {
            double comm = 0.0;
            for (int b = 0; b < 3; ++b)
              for (int c = 0; c < 3; ++c) {
                const int eps = levi_civita(iso, b, c);
                if (eps != 0) comm += eps * a[mu](b) * a[nu](c);
              }
            comm *= e_coup;
            s.commutator[iso][mu][nu] = comm;
            s.F[iso][mu][nu] = d[mu][nu](iso) - d[nu][mu](iso) + comm;
          }
        }
      }
      out.push_back(s);
    }
  }
  return out;
}

ProfilePtr parse_background_profile(const std::string& spec, double e_coup) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "special") {
    const double e = e_coup;
    return make_profile([e](double r) -> cd { return -1.0 / (e * r * r); },
                        [e](double r) -> cd { return 2.0 / (e * r * r * r); }, 1.0, "-1/(e r^2)");
  }
  if (kind == "zero") return constant_profile(0.0);
  if (kind == "const") return constant_profile(parse_double("const", arg));
  if (kind == "yukawa") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("background: yukawa needs '<a>,<b>'");
    const double a = parse_double("yukawa", arg.substr(0, comma));
    const double b = parse_double("yukawa", arg.substr(comma + 1));
    return make_profile([a, b](double r) -> cd { return a * std::exp(-b * r) / r; },
                        [a, b](double r) -> cd { return -a * std::exp(-b * r) * (b * r + 1.0) / (r * r); },
                        1.0 / std::max(b, 1e-3), spec);
  }
  if (kind == "table") {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("background: cannot open table '" + arg + "'");
    std::vector<double> r;
    std::vector<cd> v;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream row(line);
      double x = 0, re = 0, im = 0;
      if (!(row >> x >> re)) throw std::invalid_argument("background: bad table row '" + line + "'");
      row >> im;
      r.push_back(x);
      v.emplace_back(re, im);
    }
    return tabulated_profile(std::move(r), std::move(v), spec);
  }
  throw std::invalid_argument("background: unknown profile '" + spec + "'");
}

BackgroundConfig background_from_keys(const std::map<std::string, std::string>& kv) {
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  BackgroundConfig cfg;
  if (auto v = get("e_coup")) cfg.e_coup = parse_double("e_coup", *v);
  if (cfg.e_coup == 0.0) throw std::invalid_argument("background: e_coup must be nonzero");
  cfg.g_mag = 1.0 / cfg.e_coup;
  if (auto v = get("g_mag")) cfg.g_mag = parse_double("g_mag", *v);
  if (auto v = get("kappa")) cfg.kappa = parse_double("kappa", *v);
  if (auto v = get("mass")) cfg.mass = parse_double("mass", *v);
  cfg.profile_K = parse_background_profile(get("profile_K") ? *get("profile_K") : "special", cfg.e_coup);
  cfg.profile_F = parse_background_profile(get("profile_F") ? *get("profile_F") : "zero", cfg.e_coup);
  cfg.profile_Phi = parse_background_profile(get("profile_Phi") ? *get("profile_Phi") : "zero", cfg.e_coup);
  return cfg;
}

}  // namespace isodoublet
