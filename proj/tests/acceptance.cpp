// Acceptance runner: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Each criterion names the records it relies on and the largest tolerance
// allowed for them; a record that is missing, failing or checked with a
// looser tolerance fails the criterion.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "isodoublet/suite.hpp"
#include "json.hpp"

using namespace isodoublet;

namespace {

struct Gate {
  std::string prefix;  // id prefix
  double bound;        // largest tolerance allowed; <0 means any (flag or lower-bound check)
  int min_count = 1;
};

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

Outcome evaluate(const std::vector<CheckRecord>& records, const std::vector<Gate>& gates) {
  Outcome o;
  int total = 0;
  for (const auto& g : gates) {
    int n = 0;
    for (const auto& r : records) {
      if (r.id.rfind(g.prefix, 0) != 0) continue;
      ++n;
      if (!r.pass()) o.fail(r.id + " deviation " + std::to_string(r.deviation));
      if (g.bound >= 0.0 && r.tolerance > g.bound) o.fail(r.id + " tolerance looser than required");
    }
    if (n < g.min_count) o.fail(g.prefix + ": " + std::to_string(n) + " records, need " + std::to_string(g.min_count));
    total += n;
  }
  if (o.pass) o.detail = std::to_string(total) + " records";
  return o;
}

std::vector<CheckRecord> timed(const std::string& suite, const SuiteConfig& cfg, double& seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  auto r = run_suite_checks(suite, cfg);
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

int cli(const std::string& args, const std::string& report) {
  const std::string cmd = std::string(ISODOUBLET_CLI) + " run " + args + " -o " + report + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct ReportScan {
  int checks = 0;
  std::vector<std::string> failed;
};

ReportScan scan(const std::string& path) {
  ReportScan s;
  std::ifstream in(path);
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    if (j["type"] != "check") continue;
    ++s.checks;
    if (j["verdict"] == "fail") s.failed.push_back(j["id"]);
  }
  return s;
}

bool any_prefix(const std::vector<std::string>& ids, const std::string& prefix) {
  for (const auto& id : ids)
    if (id.rfind(prefix, 0) == 0) return true;
  return false;
}

}  // namespace

int main() {
  const SuiteConfig cfg;
  std::vector<std::pair<std::string, Outcome>> results;
  auto report = [&](const std::string& name, Outcome o) { results.emplace_back(name, std::move(o)); };
  std::size_t total_records = 0;
  auto count = [&](const std::vector<CheckRecord>& r) {
    total_records += r.size();
    return r;
  };

  double t_angular = 0.0, t_eigen = 0.0, t_unused = 0.0;
  const auto angular = count(timed("angular", cfg, t_angular));
  const auto eigen = count(timed("eigen", cfg, t_eigen));
  const auto gauge = count(timed("gauge", cfg, t_unused));
  const auto overlap = count(timed("overlap", cfg, t_unused));
  const auto expectation = count(timed("expectation", cfg, t_unused));
  const auto selection = count(timed("selection", cfg, t_unused));
  const auto adjoint = count(timed("adjoint", cfg, t_unused));
  const auto background = count(timed("background", cfg, t_unused));

  {
    Outcome o = evaluate(angular, {{"angular.recursion_dtheta.", 1e-10, 11}, {"angular.recursion_ratio.", 1e-10, 11}});
    if (t_angular >= 5.0) o.fail("runtime " + std::to_string(t_angular) + " s");
    report("1 recursion", o);
  }
  {
    Outcome o = evaluate(eigen, {{"eigen.N_A.", 1e-11, 25},
                                 {"eigen.N_A_squared.", 1e-11, 25},
                                 {"eigen.J_squared.", 1e-11, 25},
                                 {"eigen.J3.", 1e-11, 25}});
    if (t_eigen >= 30.0) o.fail("runtime " + std::to_string(t_eigen) + " s");
    report("2 eigenstructure", o);
  }
  report("3 gauge", evaluate(gauge, {{"gauge.conjugation_schwinger.", 1e-12},
                                     {"gauge.conjugation_cartesian.", 1e-11},
                                     {"gauge.composition", 1e-14},
                                     {"gauge.covariance_cartesian_", 1e-11}}));
  {
    Outcome o = evaluate(overlap, {{"overlap.gram.", 1e-10, 5},
                                   {"overlap.gram_identity.", 1e-11},
                                   {"overlap.gram_eigenvalues.", 1e-10, 2}});
    int complex_A = 0;
    for (const auto& r : overlap)
      if (r.id.rfind("overlap.gram.", 0) == 0 && r.id.back() == 'i') ++complex_A;
    if (complex_A < 2) o.fail("fewer than two complex A values");
    report("4 overlap", o);
  }
  report("5 expectation", evaluate(expectation, {{"expectation.lattice=", 1e-9, 125},
                                                 {"expectation.case.", 1e-9, 4},
                                                 {"expectation.recovery.", 1e-9, 2}}));
  report("6 selection", evaluate(selection, {{"selection.position_vanishes.", 1e-10},
                                             {"selection.abelian_z.", -1, 2},
                                             {"selection.reflection_free.", 1e-12},
                                             {"selection.reflection_doublet.", 1e-12},
                                             {"selection.reflection_charged_absent", -1}}));
  report("7 adjoint", evaluate(adjoint, {{"adjoint.relation.", 1e-10, 20}, {"adjoint.self_adjoint.", 1e-12}}));
  report("8 background", evaluate(background, {{"background.maxwell", 1e-13},
                                               {"background.ym_embedded_components", 1e-13},
                                               {"background.mixing_special", 1e-13}}));

  {
    Outcome o;
    const std::string dir = ISODOUBLET_TMP;
    const std::string clean = dir + "/acceptance_clean.jsonl";
    const int code = cli("", clean);
    const ReportScan s = scan(clean);
    if (code != kExitPass) o.fail("default run exited " + std::to_string(code));
    if (std::size_t(s.checks) != total_records)
      o.fail("report has " + std::to_string(s.checks) + " records, expected " + std::to_string(total_records));

    const std::string rec = dir + "/acceptance_recursion.jsonl";
    const int code_rec = cli("--set corrupt.recursion_sign=derivative_upper", rec);
    if (code_rec != kExitCheckFailure) o.fail("corrupt recursion sign exited " + std::to_string(code_rec));
    if (!any_prefix(scan(rec).failed, "angular.recursion_dtheta.")) o.fail("recursion gate did not fail");

    const std::string par = dir + "/acceptance_pbisp.jsonl";
    const int code_par = cli("--set corrupt.pbisp_phase=-1", par);
    if (code_par != kExitCheckFailure) o.fail("corrupt P_bisp phase exited " + std::to_string(code_par));
    if (!any_prefix(scan(par).failed, "eigen.N_A.")) o.fail("eigenstructure gate did not fail");
    if (o.pass) o.detail = std::to_string(s.checks) + " records; corruptions detected";
    report("9 cli", o);
  }

  bool all = true;
  for (const auto& [name, o] : results) {
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << "  (" << o.detail << ")\n";
    all = all && o.pass;
  }
  std::cout << "angular " << t_angular << " s, eigen " << t_eigen << " s\n";
  return all ? 0 : 1;
}
