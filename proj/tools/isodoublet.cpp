// isodoublet: run the verification suites, tabulate closed-form quantities,
// dump sampled states.
//
// Exit status: 0 all checks pass, 1 usage or configuration error,
// 2 at least one check failed.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "isodoublet/suite.hpp"

using namespace isodoublet;

namespace {

struct Common {
  std::string config_path;
  std::vector<std::string> sets;
  std::string simd;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config,-c", c.config_path, "Key-value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--set", c.sets, "Override one configuration key (key=value); repeatable");
  cmd->add_option("--simd", c.simd, "Reduction kernels: auto, scalar or avx2");
}

SuiteConfig load(const Common& c) {
  SuiteConfig cfg = c.config_path.empty() ? SuiteConfig{} : load_config(c.config_path);
  for (const auto& kv : c.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    apply_config_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!c.simd.empty()) cfg.simd = c.simd;
  return cfg;
}

std::vector<cd> parse_list(const std::string& text) {
  std::vector<cd> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_complex(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac isodoublet states in monopole backgrounds: verification runner"};
  app.require_subcommand(1);
  app.footer(
      "Exit status: 0 all checks pass, 1 usage or configuration error, 2 check failure.\n"
      "Suites: angular background eigen gauge overlap expectation selection adjoint");

  Common run_common, tab_common, dump_common;

  auto* run = app.add_subcommand("run", "Run verification suites and write a JSONL/TSV report");
  add_common(run, run_common);
  std::string output, format, a_list;
  std::vector<std::string> suites, tols;
  std::optional<int> jmax;
  run->add_option("--output,-o", output, "Report path, '-' for stdout");
  run->add_option("--format", format, "Report format: jsonl or tsv");
  run->add_option("--suite,-s", suites, "Run only these suites; repeatable");
  run->add_option("--tol", tols, "Tolerance override suite=value; repeatable");
  run->add_option("--jmax", jmax, "Largest j for the state suites");
  run->add_option("--A", a_list, "Comma-separated complex A values, e.g. '0,1.3,0.7i,0.5+0.4i'");

  auto* tab = app.add_subcommand("tabulate", "Print a delimited table of Gram matrices, expectations or matrix elements");
  add_common(tab, tab_common);
  TabulateParams tp;
  std::string tab_a, gammas, tab_out;
  tab->add_option("quantity", tp.quantity, "gram | expectation | matrix-element")
      ->required()
      ->check(CLI::IsMember({"gram", "expectation", "matrix-element"}));
  tab->add_option("--A", tab_a, "Comma-separated complex A values (default: config A_list)");
  tab->add_option("--j", tp.j, "Angular momentum j");
  tab->add_option("--m", tp.m, "Projection m");
  tab->add_option("--gamma", gammas, "Comma-separated Gamma values in [0, pi/2] (expectation)");
  tab->add_option("--alpha-minus-beta", tp.alpha_minus_beta, "Relative phase alpha - beta (expectation)");
  tab->add_option("--observable", tp.observable, "x | y | z | scalar (matrix-element)");
  tab->add_option("--delimiter", tp.delimiter, "Column delimiter");
  tab->add_option("--output,-o", tab_out, "Write the table here instead of stdout");
  tab->footer("Columns:\n" + tabulate_columns());

  auto* dump = app.add_subcommand("dump", "Sample one state on a small polar grid as CSV");
  add_common(dump, dump_common);
  QuantumNumbers q;
  std::string dump_a = "0", dump_out;
  int mu = 1;
  dump->add_option("--j", q.j, "Angular momentum j");
  dump->add_option("--m", q.m, "Projection m");
  dump->add_option("--delta", q.delta, "N_A label delta (+1 or -1)");
  dump->add_option("--mu", mu, "Internal parity mu (+1 or -1; ignored for j = 0)");
  dump->add_option("--A", dump_a, "Complex parameter A");
  dump->add_option("--output,-o", dump_out, "Write the samples here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) {
      SuiteConfig cfg = load(run_common);
      if (!output.empty()) cfg.output = output;
      if (!format.empty()) cfg.format = format;
      if (!suites.empty()) cfg.suites = suites;
      if (jmax) cfg.j_max = *jmax;
      if (!a_list.empty()) cfg.A_list = parse_list(a_list);
      for (const auto& t : tols) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("--tol expects suite=value, got '" + t + "'");
        apply_config_key(cfg, "tol." + t.substr(0, eq), t.substr(eq + 1));
      }
      return run_suite(cfg, std::cerr);
    }

    auto emit = [](const std::string& path, auto&& write) {
      if (path.empty() || path == "-") {
        write(std::cout);
        return;
      }
      std::ofstream out(path);
      if (!out) throw ConfigError("cannot write '" + path + "'");
      write(out);
    };

    if (*tab) {
      SuiteConfig cfg = load(tab_common);
      cfg.validate();
      apply_simd_choice(cfg);
      if (!tab_a.empty()) tp.A_list = parse_list(tab_a);
      if (!gammas.empty()) {
        tp.Gamma.clear();
        for (const cd& g : parse_list(gammas)) {
          if (g.imag() != 0.0) throw ConfigError("--gamma values must be real");
          tp.Gamma.push_back(g.real());
        }
      }
      emit(tab_out, [&](std::ostream& os) { tabulate(tp, cfg, os); });
      return kExitPass;
    }

    if (*dump) {
      SuiteConfig cfg = load(dump_common);
      cfg.validate();
      q.A = parse_complex(dump_a);
      q.mu = mu;
      emit(dump_out, [&](std::ostream& os) { dump_state(q, cfg, os); });
      return kExitPass;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
