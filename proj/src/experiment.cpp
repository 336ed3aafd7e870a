#include "acp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "acp/error.hpp"

namespace acp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int structure_index(Structure s) { return static_cast<int>(s); }

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ACP_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return v[lo] + (v[hi] - v[lo]) * (pos - static_cast<double>(lo));
}

double frobenius(const ComplexMatrix& m) { return m.norm(); }

}  // namespace

void ExperimentConfig::validate() const {
  if (structures.empty()) throw Error(ErrorCode::InvalidArgument, "experiment: no structures");
  if (dims.empty()) throw Error(ErrorCode::InvalidArgument, "experiment: no dimensions");
  if (deltas.empty()) throw Error(ErrorCode::InvalidArgument, "experiment: no deltas");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "experiment: trials must be >= 1");
  for (Structure s : structures) {
    if (s == Structure::Generalized) {
      throw Error(ErrorCode::InvalidArgument, "experiment: generalized is not an ensemble");
    }
  }
  for (double d : deltas) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw Error(ErrorCode::InvalidArgument, "experiment: deltas must be finite and >= 0");
    }
  }
  for (Eigen::Index n : dims) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "experiment: dimensions must be >= 2");
    for (Structure s : structures) {
      if (s == Structure::SelfDual && n % 2 != 0) {
        throw Error(ErrorCode::InvalidArgument,
                    "experiment: selfdual needs even dimensions, got " + std::to_string(n));
      }
    }
  }
}

std::uint64_t derive_seed(std::uint64_t base, Structure structure, Eigen::Index n,
                          std::size_t delta_index, int trial) {
  std::uint64_t h = splitmix64(base);
  h = splitmix64(h ^ static_cast<std::uint64_t>(structure_index(structure)));
  h = splitmix64(h ^ static_cast<std::uint64_t>(n));
  h = splitmix64(h ^ static_cast<std::uint64_t>(delta_index));
  h = splitmix64(h ^ static_cast<std::uint64_t>(trial));
  return h;
}

std::string spot_check(const StructuredPair& input, const JointDiagResult& res) {
  const ComplexMatrix& ap = res.a_prime.mat;
  const ComplexMatrix& bp = res.b_prime.mat;
  const double scale = std::max({1.0, frobenius(ap), frobenius(bp)});
  const double n = static_cast<double>(ap.rows());
  if (frobenius(ap * bp - bp * ap) > 1e-10 * std::sqrt(n) * scale) return "commutator";
  for (const auto* m : {&res.a_prime, &res.b_prime}) {
    if (frobenius(m->mat - m->mat.adjoint()) > 1e-10 * scale) return "self-adjointness";
    if (frobenius(m->mat - m->tau.apply(m->mat)) > 1e-10 * scale) return "self-tau";
  }
  // ||X|| <= ||X||_F <= sqrt(n) ||X||.
  const double fa = frobenius(input.a.mat - ap);
  const double fb = frobenius(input.b.mat - bp);
  if (res.dist_a > fa * (1 + 1e-9) + 1e-12 || fa > std::sqrt(n) * res.dist_a * (1 + 1e-9) + 1e-12)
    return "distance A";
  if (res.dist_b > fb * (1 + 1e-9) + 1e-12 || fb > std::sqrt(n) * res.dist_b * (1 + 1e-9) + 1e-12)
    return "distance B";
  return {};
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ExperimentRecord> records;
  for (Structure s : cfg.structures)
    for (Eigen::Index n : cfg.dims)
      for (std::size_t di = 0; di < cfg.deltas.size(); ++di)
        for (int t = 0; t < cfg.trials; ++t) {
          ExperimentRecord r;
          r.structure = s;
          r.n = n;
          r.delta = cfg.deltas[di];
          r.trial = t;
          r.seed = derive_seed(cfg.base_seed, s, n, di, t);
          records.push_back(r);
        }

  auto run_one = [&](ExperimentRecord& r) {
    const auto start = std::chrono::steady_clock::now();
    try {
      const StructuredPair pair =
          random_structured_pair(r.seed, r.n, r.structure, r.delta, PairMode::PerturbedCommuting);
      const JointDiagResult res = pair_correct(pair.a, pair.b, cfg.solver);
      r.comm_before = res.comm_before;
      r.comm_after = res.comm_after;
      r.eps_pair = res.eps_pair;
      r.eps_a = res.dist_a;
      r.eps_b = res.dist_b;
      r.sweeps = res.sweeps;
      if (r.trial % 10 == 0) {
        r.spot_checked = true;
        const std::string failure = spot_check(pair, res);
        if (!failure.empty()) throw Error(ErrorCode::Validation, "spot check failed: " + failure);
      }
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = e.what();
      const double nan = std::numeric_limits<double>::quiet_NaN();
      r.comm_before = r.comm_after = r.eps_pair = r.eps_a = r.eps_b = nan;
      r.sweeps = -1;
    }
    if (cfg.record_timing) {
      r.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    }
  };

  const int threads = std::min<int>(resolve_threads(cfg.threads), static_cast<int>(records.size()));
  if (threads <= 1) {
    for (auto& r : records) run_one(r);
    return records;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < records.size(); k = next++) run_one(records[k]);
    });
  }
  pool.clear();
  return records;
}

void write_csv(std::ostream& os, const std::vector<ExperimentRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << to_string(r.structure) << ',' << r.n << ',' << fmt17(r.delta) << ',' << r.trial << ','
       << r.seed << ',' << fmt17(r.comm_before) << ',' << fmt17(r.comm_after) << ','
       << fmt17(r.eps_pair) << ',' << fmt17(r.eps_a) << ',' << fmt17(r.eps_b) << ',' << r.sweeps
       << ',' << fmt17(r.runtime_ms) << '\n';
  }
}

std::string to_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;
  write_csv(os, records);
  return os.str();
}

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "summarize: no records");
  using CellKey = std::tuple<int, Eigen::Index, double>;
  std::map<CellKey, std::vector<const ExperimentRecord*>> cells;
  for (const auto& r : records) cells[{structure_index(r.structure), r.n, r.delta}].push_back(&r);

  ExperimentSummary out;
  for (const auto& [key, rs] : cells) {
    CellSummary c{rs.front()->structure, std::get<1>(key), std::get<2>(key)};
    std::vector<double> eps;
    std::vector<double> comm;
    for (const auto* r : rs) {
      ++c.count;
      if (!r->ok) {
        ++c.failed;
        continue;
      }
      eps.push_back(r->eps_pair);
      comm.push_back(r->comm_before);
    }
    c.median_eps = quantile(eps, 0.5);
    c.p90_eps = quantile(eps, 0.9);
    c.median_comm_before = quantile(comm, 0.5);
    out.cells.push_back(c);
  }

  // Cells are ordered by (structure, n, delta), so each run of equal
  // (structure, n) has ascending delta.
  for (std::size_t k = 0; k < out.cells.size();) {
    std::size_t e = k;
    bool mono = true;
    while (e + 1 < out.cells.size() && out.cells[e + 1].structure == out.cells[k].structure &&
           out.cells[e + 1].n == out.cells[k].n) {
      if (out.cells[e + 1].median_eps < out.cells[e].median_eps) mono = false;
      ++e;
    }
    out.monotonicity.push_back({out.cells[k].structure, out.cells[k].n, mono});
    k = e + 1;
  }

  std::map<std::pair<int, double>, std::vector<double>> by_delta;
  for (const auto& c : out.cells)
    by_delta[{structure_index(c.structure), c.delta}].push_back(c.median_eps);
  for (const auto& [key, meds] : by_delta) {
    const auto [lo, hi] = std::minmax_element(meds.begin(), meds.end());
    double ratio = 1.0;
    if (*hi > 0.0) ratio = *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
    out.stability.push_back({static_cast<Structure>(key.first), key.second, ratio});
  }
  return out;
}

std::string format_summary(const ExperimentSummary& s) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-9s %5s %11s %6s %6s %13s %13s %13s\n", "structure", "n",
                "delta", "trials", "failed", "median_eps", "p90_eps", "median_comm");
  os << line;
  for (const auto& c : s.cells) {
    std::snprintf(line, sizeof line, "%-9s %5ld %11.4g %6d %6d %13.6g %13.6g %13.6g\n",
                  std::string(to_string(c.structure)).c_str(), static_cast<long>(c.n), c.delta,
                  c.count, c.failed, c.median_eps, c.p90_eps, c.median_comm_before);
    os << line;
  }
  os << "\nmedian eps_pair non-decreasing in delta:\n";
  for (const auto& m : s.monotonicity) {
    os << "  " << to_string(m.structure) << " n=" << m.n << ": "
       << (m.non_decreasing ? "yes" : "no") << '\n';
  }
  os << "\ndimension stability (max/min median eps_pair across n):\n";
  for (const auto& d : s.stability) {
    std::snprintf(line, sizeof line, "  %s delta=%g: %.4g\n",
                  std::string(to_string(d.structure)).c_str(), d.delta, d.ratio);
    os << line;
  }
  return os.str();
}

}  // namespace acp
