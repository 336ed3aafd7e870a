#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "acp/acp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

template <class F>
std::string fetch_string(F&& f) {
  size_t needed = 0;
  f(nullptr, 0, &needed);
  std::string s(needed, '\0');
  if (f(s.data(), s.size(), &needed) != ACP_OK) return {};
  s.resize(needed - 1);
  return s;
}

void report_error(const char* what, acp_status s) {
  std::cerr << "acp " << what << ": " << acp_status_name(s) << ": " << acp_last_error() << '\n';
}

bool is_input_error(acp_status s) {
  return s == ACP_ERR_PARSE || s == ACP_ERR_VALIDATION || s == ACP_ERR_IO ||
         s == ACP_ERR_DIMENSION_MISMATCH || s == ACP_ERR_INVALID_ARGUMENT;
}

struct CorrectArgs {
  std::string input;
  std::optional<double> tol;
  std::optional<int> max_sweeps;
  std::string output;
  bool no_polish = false;
};

int cmd_correct(const CorrectArgs& a) {
  acp_pair pair = nullptr;
  if (acp_status s = acp_pair_load(a.input.c_str(), &pair); s != ACP_OK) {
    report_error("correct", s);
    return kExitInput;
  }
  acp_solver_options opts;
  acp_solver_options_default(&opts);
  if (a.tol) opts.rel_tol = *a.tol;
  if (a.max_sweeps) opts.max_sweeps = *a.max_sweeps;
  if (a.no_polish) opts.polish = ACP_POLISH_OFF;

  acp_result res = nullptr;
  const acp_status s = acp_correct(pair, &opts, &res);
  acp_pair_free(pair);
  if (s != ACP_OK) {
    report_error("correct", s);
    return s == ACP_ERR_INVALID_ARGUMENT ? kExitInput : kExitSolver;
  }

  acp_diagnostics d;
  acp_result_diagnostics(res, &d);
  int rc = kExitOk;
  if (a.output.empty()) {
    std::cout << fetch_string([&](char* b, size_t c, size_t* n) {
      return acp_result_to_json(res, b, c, n);
    }) << '\n';
  } else if (acp_status w = acp_result_write(res, a.output.c_str()); w != ACP_OK) {
    report_error("correct", w);
    rc = kExitInput;
  }
  std::fprintf(stderr,
               "eps_pair %.6e  ||A-A'|| %.6e  ||B-B'|| %.6e  ||[A,B]|| %.6e -> %.3e  sweeps %d\n",
               d.eps_pair, d.dist_a, d.dist_b, d.comm_before, d.comm_after, d.sweeps);
  acp_result_free(res);
  return rc;
}

int cmd_verify(const std::string& input) {
  acp_report rep = nullptr;
  if (acp_status s = acp_verify_file(input.c_str(), &rep); s != ACP_OK) {
    report_error("verify", s);
    return is_input_error(s) ? kExitInput : kExitInvalid;
  }
  std::cout << fetch_string([&](char* b, size_t c, size_t* n) { return acp_report_text(rep, b, c, n); });
  const int rc = acp_report_passed(rep) ? kExitOk : kExitInvalid;
  acp_report_free(rep);
  return rc;
}

struct ExperimentArgs {
  std::string config;
  std::vector<std::string> structures;
  std::vector<size_t> dims;
  std::vector<double> deltas;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<double> tol;
  std::optional<int> max_sweeps;
  std::string csv;
  bool timing = false;
  bool quiet = false;
};

int cmd_experiment(ExperimentArgs a) {
  acp_experiment_config cfg{};
  acp_solver_options_default(&cfg.solver);
  cfg.trials = 10;
  cfg.seed = 1;

  if (!a.config.empty()) {
    try {
      std::ifstream f(a.config);
      if (!f) throw std::runtime_error("cannot open " + a.config);
      const auto j = nlohmann::json::parse(f);
      if (a.structures.empty() && j.contains("structures"))
        a.structures = j.at("structures").get<std::vector<std::string>>();
      if (a.dims.empty() && j.contains("dims")) a.dims = j.at("dims").get<std::vector<size_t>>();
      if (a.deltas.empty() && j.contains("deltas"))
        a.deltas = j.at("deltas").get<std::vector<double>>();
      if (!a.trials && j.contains("trials")) a.trials = j.at("trials").get<int>();
      if (!a.seed && j.contains("seed")) a.seed = j.at("seed").get<std::uint64_t>();
      if (!a.threads && j.contains("threads")) a.threads = j.at("threads").get<int>();
      if (!a.tol && j.contains("tol")) a.tol = j.at("tol").get<double>();
      if (!a.max_sweeps && j.contains("max_sweeps")) a.max_sweeps = j.at("max_sweeps").get<int>();
      if (a.csv.empty() && j.contains("csv")) a.csv = j.at("csv").get<std::string>();
      if (!a.timing && j.contains("timing")) a.timing = j.at("timing").get<bool>();
    } catch (const std::exception& e) {
      std::cerr << "acp experiment: bad config: " << e.what() << '\n';
      return kExitInput;
    }
  }
  if (a.structures.empty()) a.structures = {"real", "complex", "selfdual"};
  if (a.dims.empty()) a.dims = {4, 8};
  if (a.deltas.empty()) a.deltas = {1e-3};

  std::vector<const char*> names;
  for (const auto& s : a.structures) names.push_back(s.c_str());
  cfg.structures = names.data();
  cfg.n_structures = names.size();
  cfg.dims = a.dims.data();
  cfg.n_dims = a.dims.size();
  cfg.deltas = a.deltas.data();
  cfg.n_deltas = a.deltas.size();
  if (a.trials) cfg.trials = *a.trials;
  if (a.seed) cfg.seed = *a.seed;
  if (a.threads) cfg.threads = *a.threads;
  if (a.tol) cfg.solver.rel_tol = *a.tol;
  if (a.max_sweeps) cfg.solver.max_sweeps = *a.max_sweeps;
  cfg.record_timing = a.timing ? 1 : 0;

  acp_experiment exp = nullptr;
  if (acp_status s = acp_experiment_run(&cfg, &exp); s != ACP_OK) {
    report_error("experiment", s);
    return is_input_error(s) ? kExitInput : kExitSolver;
  }
  int rc = kExitOk;
  if (a.csv.empty()) {
    std::cout << fetch_string([&](char* b, size_t c, size_t* n) { return acp_experiment_csv(exp, b, c, n); });
  } else if (acp_status s = acp_experiment_write_csv(exp, a.csv.c_str()); s != ACP_OK) {
    report_error("experiment", s);
    rc = kExitInput;
  }
  if (!a.quiet) {
    std::ostream& os = a.csv.empty() ? std::cerr : std::cout;
    os << fetch_string([&](char* b, size_t c, size_t* n) { return acp_experiment_summary(exp, b, c, n); });
    if (size_t failed = acp_experiment_failed_count(exp)) os << failed << " trials failed\n";
  }
  acp_experiment_free(exp);
  return rc;
}

int cmd_demo() {
  const std::string text =
      fetch_string([](char* b, size_t c, size_t* n) { return acp_demo_text(b, c, n); });
  if (text.empty()) {
    std::cerr << "acp demo: " << acp_last_error() << '\n';
    return kExitSolver;
  }
  std::cout << text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nearby commuting pairs of self-adjoint matrices with a reflection"};
  app.set_version_flag("--version", acp_version());
  app.require_subcommand(1);

  CorrectArgs ca;
  auto* correct = app.add_subcommand("correct", "Find a nearby commuting pair for a pair document");
  correct->add_option("input", ca.input, "Pair document (JSON)")->required();
  correct->add_option("--tol", ca.tol, "Relative sweep tolerance of the Jacobi solver");
  correct->add_option("--max-sweeps", ca.max_sweeps, "Sweep limit");
  correct->add_option("-o,--output", ca.output, "Result document path (default: stdout)");
  correct->add_flag("--no-polish", ca.no_polish, "Skip the small-dimension distance polish");

  std::string verify_input;
  auto* verify = app.add_subcommand("verify", "Recheck every invariant of a pair or result document");
  verify->add_option("input", verify_input, "Document (JSON)")->required();

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Run a seeded perturbation experiment");
  experiment->add_option("--config", ea.config, "JSON config; explicit flags take precedence");
  experiment->add_option("--structure", ea.structures, "real, complex, selfdual")->delimiter(',');
  experiment->add_option("--dims", ea.dims, "Dimensions")->delimiter(',');
  experiment->add_option("--deltas", ea.deltas, "Perturbation sizes")->delimiter(',');
  experiment->add_option("--trials", ea.trials, "Trials per cell");
  experiment->add_option("--seed", ea.seed, "Base seed");
  experiment->add_option("--threads", ea.threads, "Worker threads (default: ACP_THREADS or all cores)");
  experiment->add_option("--tol", ea.tol, "Relative sweep tolerance");
  experiment->add_option("--max-sweeps", ea.max_sweeps, "Sweep limit");
  experiment->add_option("--csv", ea.csv, "CSV output path (default: stdout)");
  experiment->add_flag("--timing", ea.timing, "Record wall-clock runtime_ms");
  experiment->add_flag("-q,--quiet", ea.quiet, "No summary");

  auto* demo = app.add_subcommand("demo", "Print a worked 4x4 self-dual example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  if (*correct) return cmd_correct(ca);
  if (*verify) return cmd_verify(verify_input);
  if (*experiment) return cmd_experiment(ea);
  if (*demo) return cmd_demo();
  return kExitInput;
}
