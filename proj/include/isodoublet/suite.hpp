#pragma once

#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "isodoublet/config.hpp"
#include "isodoublet/states.hpp"

namespace isodoublet {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailure = 2;

/// One verified relation. verdict is pass iff deviation <= tolerance.
/// Lower-bound checks ("this must be nonzero") report
/// deviation = threshold / |observed| against tolerance 1.
struct CheckRecord {
  std::string id;
  std::string suite;
  std::string relation;
  std::string computed;
  std::string reference;
  double deviation = 0.0;
  double tolerance = 0.0;

  bool pass() const { return deviation <= tolerance; }
};

struct SuiteSummary {
  int total = 0;
  int passed = 0;
  std::map<std::string, std::pair<int, int>> per_suite;  // suite -> (passed, failed)
  bool all_pass() const { return passed == total; }
};

/// Checks of one named suite, sorted by id. Throws ConfigError on an
/// unknown suite name.
std::vector<CheckRecord> run_suite_checks(std::string_view suite, const SuiteConfig& cfg);

/// All selected suites, run concurrently, merged and sorted by id.
std::vector<CheckRecord> run_checks(const SuiteConfig& cfg);

SuiteSummary summarize(const std::vector<CheckRecord>& records);

/// Header line (timestamp, SIMD variant), one line per record, summary line.
void write_report(std::ostream& out, const std::vector<CheckRecord>& records, const SuiteConfig& cfg,
                  std::string_view timestamp);

/// Runs the checks, writes the report to cfg.output ("-" for stdout) and a
/// short human summary to `log`. Returns kExitPass or kExitCheckFailure.
int run_suite(const SuiteConfig& cfg, std::ostream& log);

/// Applies cfg.simd to the dispatcher. Throws ConfigError if unavailable.
void apply_simd_choice(const SuiteConfig& cfg);

struct TabulateParams {
  std::string quantity;             // gram | expectation | matrix-element
  std::vector<cd> A_list;           // empty uses the config list
  int j = 1;
  int m = 0;
  std::vector<double> Gamma{0.0, 0.39269908169872414, 0.78539816339744828, 1.1780972450961724, 1.5707963267948966};
  double alpha_minus_beta = 0.0;
  std::string observable = "x";     // x | y | z | scalar
  char delimiter = ',';
};

/// Writes a header row and one row per parameter combination.
/// Throws ConfigError for out-of-domain parameters.
void tabulate(const TabulateParams& params, const SuiteConfig& cfg, std::ostream& out);

/// Column description printed by --help.
std::string tabulate_columns();

/// Samples Psi^A on a small polar grid: r, theta, phi, iso, slot, re, im.
void dump_state(const QuantumNumbers& q, const SuiteConfig& cfg, std::ostream& out);

}  // namespace isodoublet
