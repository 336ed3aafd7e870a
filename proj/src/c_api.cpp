#include "acp/acp.h"

#include <cstring>
#include <fstream>
#include <string>

#include "acp/document.hpp"
#include "acp/error.hpp"
#include "acp/experiment.hpp"

struct acp_matrix_t {
  acp::ComplexMatrix m;
};

struct acp_pair_t {
  acp::PairDocument doc;
};

struct acp_result_t {
  acp::JointDiagResult res;
  acp::json doc;
};

struct acp_report_t {
  acp::VerifyReport report;
};

struct acp_experiment_t {
  std::vector<acp::ExperimentRecord> records;
};

namespace {

thread_local std::string g_last_error;

acp_status status_of(acp::ErrorCode code) {
  using acp::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return ACP_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return ACP_ERR_DIMENSION_MISMATCH;
    case ErrorCode::RealityViolation: return ACP_ERR_REALITY_VIOLATION;
    case ErrorCode::NotNormal: return ACP_ERR_NOT_NORMAL;
    case ErrorCode::Singular: return ACP_ERR_SINGULAR;
    case ErrorCode::AtCenter: return ACP_ERR_AT_CENTER;
    case ErrorCode::StructureMismatch: return ACP_ERR_STRUCTURE_MISMATCH;
    case ErrorCode::NotSelfAdjoint: return ACP_ERR_NOT_SELF_ADJOINT;
    case ErrorCode::NotSelfTau: return ACP_ERR_NOT_SELF_TAU;
    case ErrorCode::TooFarFromGroup: return ACP_ERR_TOO_FAR_FROM_GROUP;
    case ErrorCode::EmptyInput: return ACP_ERR_EMPTY_INPUT;
    case ErrorCode::Parse: return ACP_ERR_PARSE;
    case ErrorCode::Validation: return ACP_ERR_VALIDATION;
    case ErrorCode::Io: return ACP_ERR_IO;
  }
  return ACP_ERR_INTERNAL;
}

acp_status fail(acp_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
acp_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const acp::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ACP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ACP_ERR_INTERNAL, e.what());
  }
}

acp_status copy_string(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf || cap < s.size() + 1) return fail(ACP_ERR_BUFFER_TOO_SMALL, "buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return ACP_OK;
}

#define ACP_REQUIRE(cond, msg) \
  if (!(cond)) return fail(ACP_ERR_INVALID_ARGUMENT, msg)

acp::Reflection make_reflection(acp_reflection_kind kind, acp_matrix s) {
  switch (kind) {
    case ACP_REFLECTION_TRANSPOSE: return acp::Reflection::transpose();
    case ACP_REFLECTION_DUAL: return acp::Reflection::dual();
    case ACP_REFLECTION_GENERALIZED:
      if (!s) throw acp::Error(acp::ErrorCode::InvalidArgument, "generalized reflection needs S");
      return acp::Reflection::generalized(s->m);
  }
  throw acp::Error(acp::ErrorCode::InvalidArgument, "unknown reflection kind");
}

acp::SolverOptions solver_options(const acp_solver_options* o) {
  acp::SolverOptions opts;
  if (!o) return opts;
  if (o->max_sweeps < 1) throw acp::Error(acp::ErrorCode::InvalidArgument, "max_sweeps must be >= 1");
  if (!(o->rel_tol > 0.0)) throw acp::Error(acp::ErrorCode::InvalidArgument, "rel_tol must be > 0");
  opts.max_sweeps = o->max_sweeps;
  opts.rel_tol = o->rel_tol;
  opts.polish = o->polish == ACP_POLISH_OFF  ? acp::Polish::Off
                : o->polish == ACP_POLISH_ON ? acp::Polish::On
                                             : acp::Polish::Auto;
  return opts;
}

}  // namespace

extern "C" {

const char* acp_version(void) { return "0.1.0"; }

const char* acp_status_name(acp_status s) {
  switch (s) {
    case ACP_OK: return "ok";
    case ACP_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case ACP_ERR_INTERNAL: return "internal error";
    default: break;
  }
  if (s >= ACP_ERR_INVALID_ARGUMENT && s <= ACP_ERR_IO) {
    return acp::to_string(static_cast<acp::ErrorCode>(s - 1));
  }
  return "unknown status";
}

const char* acp_last_error(void) { return g_last_error.c_str(); }

acp_status acp_matrix_create(size_t n, const double* data, acp_matrix* out) {
  ACP_REQUIRE(out && data && n > 0, "acp_matrix_create: null argument or n = 0");
  return guarded([&] {
    auto* h = new acp_matrix_t{acp::ComplexMatrix(n, n)};
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c)
        h->m(r, c) = acp::cplx(data[2 * (r * n + c)], data[2 * (r * n + c) + 1]);
    *out = h;
    return ACP_OK;
  });
}

void acp_matrix_free(acp_matrix m) { delete m; }

size_t acp_matrix_dim(acp_matrix m) { return m ? static_cast<size_t>(m->m.rows()) : 0; }

acp_status acp_matrix_data(acp_matrix m, double* out, size_t len) {
  ACP_REQUIRE(m && out, "acp_matrix_data: null argument");
  const auto n = static_cast<size_t>(m->m.rows());
  if (len < 2 * n * n) return fail(ACP_ERR_BUFFER_TOO_SMALL, "acp_matrix_data: need 2 n^2 doubles");
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) {
      out[2 * (r * n + c)] = m->m(r, c).real();
      out[2 * (r * n + c) + 1] = m->m(r, c).imag();
    }
  return ACP_OK;
}

acp_status acp_operator_norm(acp_matrix a, double* out) {
  ACP_REQUIRE(a && out, "acp_operator_norm: null argument");
  return guarded([&] {
    *out = acp::operator_norm(a->m);
    return ACP_OK;
  });
}

acp_status acp_commutator_norm(acp_matrix a, acp_matrix b, double* out) {
  ACP_REQUIRE(a && b && out, "acp_commutator_norm: null argument");
  return guarded([&] {
    *out = acp::commutator_norm(a->m, b->m);
    return ACP_OK;
  });
}

acp_status acp_apply_reflection(acp_matrix a, acp_reflection_kind kind, acp_matrix s,
                                acp_matrix* out) {
  ACP_REQUIRE(a && out, "acp_apply_reflection: null argument");
  return guarded([&] {
    const acp::StructuredMatrix x(a->m, make_reflection(kind, s));
    *out = new acp_matrix_t{acp::apply_reflection(x)};
    return ACP_OK;
  });
}

acp_status acp_is_self_tau(acp_matrix a, acp_reflection_kind kind, acp_matrix s, double tol,
                           int* out) {
  ACP_REQUIRE(a && out, "acp_is_self_tau: null argument");
  return guarded([&] {
    const acp::StructuredMatrix x(a->m, make_reflection(kind, s));
    *out = acp::is_self_tau(x, tol) ? 1 : 0;
    return ACP_OK;
  });
}

acp_status acp_pair_load(const char* path, acp_pair* out) {
  ACP_REQUIRE(path && out, "acp_pair_load: null argument");
  return guarded([&] {
    *out = new acp_pair_t{acp::load_pair_document(path)};
    return ACP_OK;
  });
}

acp_status acp_pair_parse(const char* text, acp_pair* out) {
  ACP_REQUIRE(text && out, "acp_pair_parse: null argument");
  return guarded([&] {
    *out = new acp_pair_t{acp::parse_pair_text(text)};
    return ACP_OK;
  });
}

acp_status acp_pair_random(uint64_t seed, size_t n, const char* structure, double delta,
                           acp_pair* out) {
  ACP_REQUIRE(structure && out, "acp_pair_random: null argument");
  return guarded([&] {
    const auto s = acp::parse_structure(structure);
    if (!s) throw acp::Error(acp::ErrorCode::InvalidArgument, std::string("unknown structure ") + structure);
    const acp::StructuredPair p = acp::random_structured_pair(
        seed, static_cast<Eigen::Index>(n), *s, delta, acp::PairMode::PerturbedCommuting);
    acp::json raw;
    raw["n"] = n;
    raw["structure"] = std::string(acp::to_string(*s));
    raw["A"] = acp::matrix_to_json(acp::to_physical(*s, p.a.mat));
    raw["B"] = acp::matrix_to_json(acp::to_physical(*s, p.b.mat));
    *out = new acp_pair_t{acp::parse_pair_document(raw)};
    return ACP_OK;
  });
}

void acp_pair_free(acp_pair p) { delete p; }

acp_status acp_pair_info(acp_pair p, size_t* n, const char** structure) {
  ACP_REQUIRE(p, "acp_pair_info: null pair");
  if (n) *n = static_cast<size_t>(p->doc.n);
  if (structure) *structure = acp::to_string(p->doc.structure).data();
  return ACP_OK;
}

acp_status acp_pair_to_json(acp_pair p, char* buf, size_t cap, size_t* needed) {
  ACP_REQUIRE(p, "acp_pair_to_json: null pair");
  return guarded([&] { return copy_string(p->doc.raw.dump(2), buf, cap, needed); });
}

void acp_solver_options_default(acp_solver_options* o) {
  if (!o) return;
  const acp::SolverOptions d;
  o->max_sweeps = d.max_sweeps;
  o->rel_tol = d.rel_tol;
  o->polish = ACP_POLISH_AUTO;
}

acp_status acp_correct(acp_pair p, const acp_solver_options* opts, acp_result* out) {
  ACP_REQUIRE(p && out, "acp_correct: null argument");
  return guarded([&] {
    acp::JointDiagResult res = acp::correct_document(p->doc, solver_options(opts));
    acp::json doc = acp::result_document(p->doc, res);
    *out = new acp_result_t{std::move(res), std::move(doc)};
    return ACP_OK;
  });
}

acp_status acp_result_diagnostics(acp_result r, acp_diagnostics* out) {
  ACP_REQUIRE(r && out, "acp_result_diagnostics: null argument");
  const auto& x = r->res;
  *out = acp_diagnostics{x.eps_pair,   x.dist_a,           x.dist_b, x.comm_before,
                         x.comm_after, x.off_energy,       x.diagonal_residue,
                         x.sweeps,     x.rotations,        x.monotone ? 1 : 0};
  return ACP_OK;
}

acp_status acp_result_to_json(acp_result r, char* buf, size_t cap, size_t* needed) {
  ACP_REQUIRE(r, "acp_result_to_json: null result");
  return guarded([&] { return copy_string(r->doc.dump(2), buf, cap, needed); });
}

acp_status acp_result_write(acp_result r, const char* path) {
  ACP_REQUIRE(r && path, "acp_result_write: null argument");
  return guarded([&] {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw acp::Error(acp::ErrorCode::Io, std::string("cannot write ") + path);
    f << r->doc.dump(2) << '\n';
    if (!f) throw acp::Error(acp::ErrorCode::Io, std::string("write failed: ") + path);
    return ACP_OK;
  });
}

void acp_result_free(acp_result r) { delete r; }

acp_status acp_verify_file(const char* path, acp_report* out) {
  ACP_REQUIRE(path && out, "acp_verify_file: null argument");
  return guarded([&] {
    std::ifstream f(path);
    if (!f) throw acp::Error(acp::ErrorCode::Io, std::string("cannot open ") + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return acp_verify_json(text.c_str(), out);
  });
}

acp_status acp_verify_json(const char* text, acp_report* out) {
  ACP_REQUIRE(text && out, "acp_verify_json: null argument");
  return guarded([&] {
    acp::json j;
    try {
      j = acp::json::parse(text);
    } catch (const acp::json::exception& e) {
      throw acp::Error(acp::ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
    }
    *out = new acp_report_t{acp::verify_document(j)};
    return ACP_OK;
  });
}

int acp_report_passed(acp_report r) { return r && r->report.passed() ? 1 : 0; }

size_t acp_report_count(acp_report r) { return r ? r->report.items.size() : 0; }

acp_status acp_report_item(acp_report r, size_t i, const char** name, double* value,
                           double* threshold, int* passed) {
  ACP_REQUIRE(r && i < r->report.items.size(), "acp_report_item: bad report or index");
  const auto& item = r->report.items[i];
  if (name) *name = item.name.c_str();
  if (value) *value = item.value;
  if (threshold) *threshold = item.threshold;
  if (passed) *passed = item.passed ? 1 : 0;
  return ACP_OK;
}

acp_status acp_report_text(acp_report r, char* buf, size_t cap, size_t* needed) {
  ACP_REQUIRE(r, "acp_report_text: null report");
  return guarded([&] { return copy_string(r->report.format(), buf, cap, needed); });
}

void acp_report_free(acp_report r) { delete r; }

acp_status acp_experiment_run(const acp_experiment_config* c, acp_experiment* out) {
  ACP_REQUIRE(c && out, "acp_experiment_run: null argument");
  return guarded([&] {
    acp::ExperimentConfig cfg;
    for (size_t k = 0; k < c->n_structures; ++k) {
      const auto s = acp::parse_structure(c->structures[k]);
      if (!s) {
        throw acp::Error(acp::ErrorCode::InvalidArgument,
                         std::string("unknown structure ") + c->structures[k]);
      }
      cfg.structures.push_back(*s);
    }
    for (size_t k = 0; k < c->n_dims; ++k) cfg.dims.push_back(static_cast<Eigen::Index>(c->dims[k]));
    cfg.deltas.assign(c->deltas, c->deltas + c->n_deltas);
    cfg.trials = c->trials;
    cfg.base_seed = c->seed;
    cfg.solver = solver_options(&c->solver);
    cfg.threads = c->threads;
    cfg.record_timing = c->record_timing != 0;
    *out = new acp_experiment_t{acp::run_experiment(cfg)};
    return ACP_OK;
  });
}

size_t acp_experiment_record_count(acp_experiment e) { return e ? e->records.size() : 0; }

size_t acp_experiment_failed_count(acp_experiment e) {
  if (!e) return 0;
  size_t n = 0;
  for (const auto& r : e->records) n += r.ok ? 0 : 1;
  return n;
}

acp_status acp_experiment_write_csv(acp_experiment e, const char* path) {
  ACP_REQUIRE(e && path, "acp_experiment_write_csv: null argument");
  return guarded([&] {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw acp::Error(acp::ErrorCode::Io, std::string("cannot write ") + path);
    acp::write_csv(f, e->records);
    if (!f) throw acp::Error(acp::ErrorCode::Io, std::string("write failed: ") + path);
    return ACP_OK;
  });
}

acp_status acp_experiment_csv(acp_experiment e, char* buf, size_t cap, size_t* needed) {
  ACP_REQUIRE(e, "acp_experiment_csv: null experiment");
  return guarded([&] { return copy_string(acp::to_csv(e->records), buf, cap, needed); });
}

acp_status acp_experiment_summary(acp_experiment e, char* buf, size_t cap, size_t* needed) {
  ACP_REQUIRE(e, "acp_experiment_summary: null experiment");
  return guarded([&] {
    return copy_string(acp::format_summary(acp::summarize(e->records)), buf, cap, needed);
  });
}

void acp_experiment_free(acp_experiment e) { delete e; }

acp_status acp_demo_text(char* buf, size_t cap, size_t* needed) {
  return guarded([&] { return copy_string(acp::demo_text(), buf, cap, needed); });
}

}  // extern "C"
