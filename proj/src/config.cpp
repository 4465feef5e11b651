#include "isodoublet/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace isodoublet {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(std::string(what) + ": not a number: '" + t + "'");
  return v;
}

int to_int(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
    throw ConfigError(std::string(what) + ": not an integer: '" + t + "'");
  return v;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

cd parse_complex(std::string_view text) {
  std::string t;
  for (char c : text)
    if (c != ' ' && c != '\t') t.push_back(c);
  if (t.empty()) throw ConfigError("complex: empty value");
  if (t.back() != 'i') return {to_double(t, "complex"), 0.0};

  // Imaginary part starts at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = t.size() - 1; k-- > 0;) {
    if ((t[k] == '+' || t[k] == '-') && (k == 0 || (t[k - 1] != 'e' && t[k - 1] != 'E'))) {
      split = k;
      break;
    }
  }
  const std::string re_part = split == std::string::npos || split == 0 ? "" : t.substr(0, split);
  std::string im_part = t.substr(split == std::string::npos ? 0 : split);
  im_part.pop_back();
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  if (im_part.front() == '+') im_part.erase(0, 1);
  const double re = re_part.empty() ? 0.0 : to_double(re_part, "complex");
  return {re, to_double(im_part, "complex")};
}

std::string format_complex(cd z) {
  std::ostringstream os;
  os << std::setprecision(17);
  if (z.imag() == 0.0) {
    os << z.real();
  } else if (z.real() == 0.0) {
    os << z.imag() << 'i';
  } else {
    os << z.real() << (z.imag() < 0.0 ? "" : "+") << z.imag() << 'i';
  }
  return os.str();
}

void SuiteConfig::validate() const {
  if (j_max < 0) throw ConfigError("j_max must be >= 0");
  if (2 * j_max > kMaxTwiceJ) throw ConfigError("j_max exceeds the supported range");
  if (A_list.empty()) throw ConfigError("A_list must not be empty");
  for (const cd& a : A_list)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw ConfigError("A_list entries must be finite");
  if (!(profile_rate > 0.0) || !std::isfinite(profile_rate)) throw ConfigError("profiles: rate must be positive");
  if (rmax < 0.0 || !std::isfinite(rmax)) throw ConfigError("radial.rmax must be positive");
  if (nodes_per_panel < 4 || nodes_per_panel > 128) throw ConfigError("radial.nodes_per_panel must lie in [4, 128]");
  for (const auto& [suite, tol] : tolerances) {
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
      throw ConfigError("tol." + suite + ": unknown suite");
    if (!(tol >= std::numeric_limits<double>::epsilon())) throw ConfigError("tol." + suite + ": below machine epsilon");
  }
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw ConfigError("unknown suite '" + s + "'");
  if (format != "jsonl" && format != "tsv") throw ConfigError("format must be jsonl or tsv");
  if (simd != "auto" && simd != "scalar" && simd != "avx2") throw ConfigError("simd must be auto, scalar or avx2");
  try {
    (void)background_from_keys(background_keys);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

double SuiteConfig::radial_extent() const { return rmax > 0.0 ? rmax : 40.0 / std::min(profile_rate, 1.0); }

bool SuiteConfig::runs(std::string_view suite) const {
  return suites.empty() || std::find(suites.begin(), suites.end(), suite) != suites.end();
}

double SuiteConfig::tolerance(std::string_view suite, double fallback) const {
  const auto it = tolerances.find(std::string(suite));
  return it == tolerances.end() ? fallback : it->second;
}

void apply_config_key(SuiteConfig& cfg, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "j_max") {
    cfg.j_max = to_int(value, key);
  } else if (key == "A_list") {
    cfg.A_list.clear();
    for (const auto& item : split_list(value)) cfg.A_list.push_back(parse_complex(item));
  } else if (key == "profiles") {
    if (value.rfind("exp:", 0) != 0) throw ConfigError("profiles: expected exp:<rate>");
    cfg.profile_rate = to_double(value.substr(4), key);
  } else if (key == "radial.rmax") {
    cfg.rmax = to_double(value, key);
  } else if (key == "radial.nodes_per_panel") {
    cfg.nodes_per_panel = to_int(value, key);
  } else if (key.rfind("tol.", 0) == 0) {
    cfg.tolerances[key.substr(4)] = to_double(value, key);
  } else if (key == "suites") {
    cfg.suites = split_list(value);
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "format") {
    cfg.format = value;
  } else if (key == "simd") {
    cfg.simd = value;
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(to_int(value, key));
  } else if (key == "corrupt.recursion_sign") {
    auto& s = cfg.conv.recursion;
    if (value == "derivative_lower") s.derivative_lower = -s.derivative_lower;
    else if (value == "derivative_upper") s.derivative_upper = -s.derivative_upper;
    else if (value == "ratio_lower") s.ratio_lower = -s.ratio_lower;
    else if (value == "ratio_upper") s.ratio_upper = -s.ratio_upper;
    else throw ConfigError("corrupt.recursion_sign: unknown coefficient '" + value + "'");
  } else if (key == "corrupt.pbisp_phase") {
    const cd p = parse_complex(value);
    if (std::abs(std::abs(p) - 1.0) > 1e-12) throw ConfigError("corrupt.pbisp_phase must have modulus 1");
    cfg.conv.pbisp_phase = p;
  } else if (key.rfind("background.", 0) == 0) {
    cfg.background_keys[key.substr(11)] = value;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

SuiteConfig parse_config(std::istream& in, const std::string& source) {
  SuiteConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key = value");
    try {
      apply_config_key(cfg, trim(t.substr(0, eq)), t.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

SuiteConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in, path);
}

}  // namespace isodoublet
