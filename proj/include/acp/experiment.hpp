#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "acp/ensemble.hpp"
#include "acp/jadiag.hpp"

namespace acp {

struct ExperimentConfig {
  std::vector<Structure> structures;
  std::vector<Eigen::Index> dims;
  std::vector<double> deltas;
  int trials = 10;
  std::uint64_t base_seed = 1;
  SolverOptions solver;
  /// Worker threads; 0 reads ACP_THREADS and falls back to the core count.
  int threads = 0;
  /// Wall-clock timing makes the CSV non-reproducible, so it is opt-in;
  /// runtime_ms is written as 0 otherwise.
  bool record_timing = false;

  /// Throws InvalidArgument naming the first violated constraint.
  void validate() const;
};

struct ExperimentRecord {
  Structure structure = Structure::Real;
  Eigen::Index n = 0;
  double delta = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  double comm_before = 0.0;
  double comm_after = 0.0;
  double eps_pair = 0.0;
  double eps_a = 0.0;
  double eps_b = 0.0;
  int sweeps = 0;
  double runtime_ms = 0.0;
  bool ok = true;
  bool spot_checked = false;
  std::string error;
};

/// splitmix64 chain over (base seed, structure, n, delta index, trial).
std::uint64_t derive_seed(std::uint64_t base, Structure structure, Eigen::Index n,
                          std::size_t delta_index, int trial);

/// One record per (structure, n, delta, trial), in that nesting order.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

/// Independent re-check of a pair_correct outcome (Frobenius-norm bounds,
/// explicit products). Returns an empty string on success.
std::string spot_check(const StructuredPair& input, const JointDiagResult& res);

inline constexpr const char* kCsvHeader =
    "structure,n,delta,trial,seed,comm_before,comm_after,eps_pair,eps_A,eps_B,sweeps,runtime_ms";

void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records);
std::string to_csv(const std::vector<ExperimentRecord>& records);

struct CellSummary {
  Structure structure;
  Eigen::Index n;
  double delta;
  int count = 0;
  int failed = 0;
  double median_eps = 0.0;
  double p90_eps = 0.0;
  double median_comm_before = 0.0;
};

struct MonotonicityFlag {
  Structure structure;
  Eigen::Index n;
  bool non_decreasing;
};

struct DimensionStability {
  Structure structure;
  double delta;
  double ratio;  // max / min of the per-n medians
};

struct ExperimentSummary {
  std::vector<CellSummary> cells;
  std::vector<MonotonicityFlag> monotonicity;
  std::vector<DimensionStability> stability;
};

/// Throws EmptyInput for an empty record list.
ExperimentSummary summarize(const std::vector<ExperimentRecord>& records);

std::string format_summary(const ExperimentSummary& summary);

}  // namespace acp
