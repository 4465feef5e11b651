#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isodoublet/operators.hpp"

namespace isodoublet {

/// Malformed configuration or out-of-domain parameter (CLI exit status 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "1.3", "0.7i", "-i", "0.5+0.4i", "-2+0.25i", "1e-3-2i".
cd parse_complex(std::string_view text);
/// Round-trippable text form with 17 significant digits.
std::string format_complex(cd z);

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"angular", "background", "eigen",       "gauge",
                                              "overlap", "expectation", "selection", "adjoint"};
  return names;
}

struct SuiteConfig {
  int j_max = 4;
  std::vector<cd> A_list{cd{0.0, 0.0}, cd{1.3, 0.0}, cd{0.0, 0.7}, cd{0.5, 0.4}, cd{-2.0, 0.25}};
  double profile_rate = 1.0;  // profiles = exp:<rate>
  double rmax = 0.0;          // 0 selects 40 / min(rate, 1)
  int nodes_per_panel = 16;
  std::map<std::string, double> tolerances;  // suite name -> override
  std::vector<std::string> suites;           // empty runs all
  std::string output = "-";
  std::string format = "jsonl";              // jsonl | tsv
  std::string simd = "auto";                 // auto | scalar | avx2
  std::uint64_t seed = 20261015;
  Conventions conv;
  std::map<std::string, std::string> background_keys;

  /// Throws ConfigError.
  void validate() const;
  double radial_extent() const;
  bool runs(std::string_view suite) const;
  /// Override for the suite if set, else `fallback`.
  double tolerance(std::string_view suite, double fallback) const;
};

/// One `key = value` per line; `#` starts a comment. See README for keys.
SuiteConfig parse_config(std::istream& in, const std::string& source = "<config>");
SuiteConfig load_config(const std::string& path);
/// Applies a single key, as from the file or a CLI override.
void apply_config_key(SuiteConfig& cfg, const std::string& key, const std::string& value);

}  // namespace isodoublet
