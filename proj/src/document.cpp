#include "acp/document.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "acp/ensemble.hpp"
#include "acp/error.hpp"

namespace acp {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }

double scale_of(const ComplexMatrix& m) { return std::max(1.0, operator_norm(m)); }

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

struct Header {
  Structure structure;
  Eigen::Index n;
  std::optional<Reflection> generalized;
};

Header read_header(const json& j) {
  if (!j.is_object()) parse_fail("document must be a JSON object");
  const json* jn = find(j, "n");
  if (!jn || !jn->is_number_integer()) parse_fail("field \"n\" must be an integer");
  const auto n = jn->get<long long>();
  if (n < 1) parse_fail("field \"n\" must be positive");
  const json* js = find(j, "structure");
  if (!js || !js->is_string()) parse_fail("field \"structure\" must be a string");
  const auto s = parse_structure(js->get<std::string>());
  if (!s) parse_fail("unknown structure \"" + js->get<std::string>() + "\"");

  Header h{*s, static_cast<Eigen::Index>(n), std::nullopt};
  if (h.structure == Structure::SelfDual && n % 2 != 0) {
    throw Error(ErrorCode::Validation, "selfdual documents need even n, got " + std::to_string(n));
  }
  const json* jS = find(j, "S");
  if (h.structure == Structure::Generalized) {
    if (!jS) parse_fail("generalized documents need the reflection matrix \"S\"");
    try {
      h.generalized = Reflection::generalized(matrix_from_json(*jS, h.n, "S"), kLoadTol);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Parse) throw;
      throw Error(ErrorCode::Validation, std::string("S: ") + e.what());
    }
  } else if (jS) {
    parse_fail("field \"S\" is only allowed with structure \"generalized\"");
  }
  return h;
}

StructuredMatrix read_matrix(const json& j, const Header& h, const char* key) {
  const json* m = find(j, key);
  if (!m) parse_fail(std::string("missing field \"") + key + "\"");
  const ComplexMatrix phys = matrix_from_json(*m, h.n, key);
  return to_ambient(h.structure, phys, h.generalized ? &*h.generalized : nullptr);
}

double self_adjoint_defect(const StructuredMatrix& m) { return operator_norm(m.mat - m.mat.adjoint()); }
double self_tau_defect(const StructuredMatrix& m) { return operator_norm(m.mat - m.tau.apply(m.mat)); }

void validate_matrix(const StructuredMatrix& m, Structure s, const char* name) {
  const double scale = scale_of(m.mat);
  const double sa = self_adjoint_defect(m);
  if (sa > kLoadTol * scale) {
    throw Error(ErrorCode::Validation, std::string(name) + " is not self-adjoint: ||" + name +
                                           " - " + name + "*|| = " + std::to_string(sa));
  }
  const double st = self_tau_defect(m);
  if (st > kLoadTol * scale) {
    const std::string what = s == Structure::Real       ? "real"
                             : s == Structure::SelfDual ? "self-dual"
                                                        : "self-tau";
    throw Error(ErrorCode::Validation, std::string(name) + " is not " + what + ": defect " +
                                           std::to_string(st));
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j, Eigen::Index n, const std::string& name) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    parse_fail("matrix \"" + name + "\" must have " + std::to_string(n) + " rows");
  }
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      parse_fail("matrix \"" + name + "\" row " + std::to_string(r) + " must have " +
                 std::to_string(n) + " entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        parse_fail("matrix \"" + name + "\" entry (" + std::to_string(r) + ", " +
                   std::to_string(c) + ") must be a [re, im] pair");
      }
      m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  if (!m.allFinite()) parse_fail("matrix \"" + name + "\" has non-finite entries");
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

StructuredMatrix to_ambient(Structure s, const ComplexMatrix& physical, const Reflection* generalized) {
  switch (s) {
    case Structure::Complex: return double_complex(physical);
    case Structure::Generalized:
      if (!generalized) throw Error(ErrorCode::InvalidArgument, "generalized structure needs S");
      return StructuredMatrix(physical, *generalized);
    case Structure::Real:
    case Structure::SelfDual: return StructuredMatrix(physical, reflection_for(s, physical.rows()));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown structure");
}

ComplexMatrix to_physical(Structure s, const ComplexMatrix& ambient) {
  return s == Structure::Complex ? undouble_complex(ambient) : ambient;
}

PairDocument parse_pair_document(const json& j, bool validate) {
  const Header h = read_header(j);
  StructuredMatrix a = read_matrix(j, h, "A");
  StructuredMatrix b = read_matrix(j, h, "B");
  if (validate) {
    validate_matrix(a, h.structure, "A");
    validate_matrix(b, h.structure, "B");
  }
  return PairDocument{h.structure, h.n, std::move(a), std::move(b), j};
}

PairDocument parse_pair_text(const std::string& text, bool validate) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
  return parse_pair_document(j, validate);
}

PairDocument load_pair_document(const std::filesystem::path& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pair_text(ss.str(), validate);
}

StructuredMatrix project_structure(const StructuredMatrix& m) {
  const StructuredMatrix sym(symmetrize_self_tau(m), m.tau);
  return StructuredMatrix(hermitian_part(sym.mat), m.tau);
}

JointDiagResult correct_document(const PairDocument& doc, const SolverOptions& opts) {
  JointDiagResult res = pair_correct(project_structure(doc.a), project_structure(doc.b), opts);
  res.dist_a = operator_norm(doc.a.mat - res.a_prime.mat);
  res.dist_b = operator_norm(doc.b.mat - res.b_prime.mat);
  res.eps_pair = res.dist_a + res.dist_b;
  res.comm_before = commutator_norm(doc.a.mat, doc.b.mat);
  return res;
}

json result_document(const PairDocument& doc, const JointDiagResult& res) {
  json out;
  out["n"] = doc.n;
  out["structure"] = std::string(to_string(doc.structure));
  if (doc.structure == Structure::Generalized) out["S"] = doc.raw.at("S");
  out["A"] = doc.raw.at("A");
  out["B"] = doc.raw.at("B");
  out["A_prime"] = matrix_to_json(to_physical(doc.structure, res.a_prime.mat));
  out["B_prime"] = matrix_to_json(to_physical(doc.structure, res.b_prime.mat));
  out["U"] = matrix_to_json(to_physical(doc.structure, res.u));
  out["diagnostics"] = {
      {"eps_pair", res.eps_pair},
      {"dist_A", res.dist_a},
      {"dist_B", res.dist_b},
      {"comm_before", res.comm_before},
      {"comm_after", res.comm_after},
      {"group", to_string(res.group)},
      {"sweeps", res.sweeps},
      {"rotations", res.rotations},
      {"off_energy", res.off_energy},
      {"monotone", res.monotone},
      {"diagonal_residue", res.diagonal_residue},
      {"polish_gain", res.polish_gain},
      {"scale", res.scale},
      {"energy_trace", res.energy_trace},
  };
  return out;
}

bool VerifyReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const VerifyItem& i) { return i.passed; });
}

std::string VerifyReport::format() const {
  std::ostringstream os;
  for (const auto& i : items) {
    os << (i.passed ? "ok   " : "FAIL ") << i.name << ": " << fmt(i.value)
       << " (limit " << fmt(i.threshold) << ")\n";
  }
  os << (passed() ? "all checks passed" : "verification FAILED") << '\n';
  return os.str();
}

VerifyReport verify_document(const json& j) {
  const Header h = read_header(j);
  VerifyReport rep;
  auto add = [&](std::string name, double value, double limit) {
    rep.items.push_back({std::move(name), value, limit, value <= limit});
  };
  auto structure_items = [&](const std::string& name, const StructuredMatrix& m, double tol) {
    const double scale = scale_of(m.mat);
    add(name + " self-adjoint", self_adjoint_defect(m), tol * scale);
    add(name + " self-tau", self_tau_defect(m), tol * scale);
    add(name + " real part (X^tau = X*)", reality_defect(m), tol * scale);
  };

  const StructuredMatrix a = read_matrix(j, h, "A");
  const StructuredMatrix b = read_matrix(j, h, "B");
  structure_items("A", a, kLoadTol);
  structure_items("B", b, kLoadTol);

  if (!j.contains("A_prime") && !j.contains("B_prime")) {
    add("[A, B] commutes", commutator_norm(a.mat, b.mat),
        1e-10 * std::max(1.0, operator_norm(a.mat) * operator_norm(b.mat)));
    return rep;
  }

  const StructuredMatrix ap = read_matrix(j, h, "A_prime");
  const StructuredMatrix bp = read_matrix(j, h, "B_prime");
  structure_items("A'", ap, 1e-10);
  structure_items("B'", bp, 1e-10);
  const double comm_scale = std::max(1.0, operator_norm(ap.mat) * operator_norm(bp.mat));
  add("[A', B'] commutes", commutator_norm(ap.mat, bp.mat), 1e-10 * comm_scale);

  const double dist_a = operator_norm(a.mat - ap.mat);
  const double dist_b = operator_norm(b.mat - bp.mat);
  if (const json* d = find(j, "diagnostics"); d && d->is_object()) {
    auto compare = [&](const char* key, double actual) {
      const json* v = find(*d, key);
      if (!v || !v->is_number()) {
        add(std::string("diagnostics.") + key + " present", 1.0, 0.0);
        return;
      }
      const double reported = v->get<double>();
      add(std::string("diagnostics.") + key + " matches", std::abs(actual - reported),
          1e-9 * std::max(1.0, std::abs(reported)));
    };
    compare("dist_A", dist_a);
    compare("dist_B", dist_b);
    compare("eps_pair", dist_a + dist_b);
    compare("comm_before", commutator_norm(a.mat, b.mat));
  }

  if (j.contains("U")) {
    const StructuredMatrix u = read_matrix(j, h, "U");
    const StructureGroup group = structure_group_for(ap);
    add(std::string("U in ") + to_string(group.kind) + " group", group.deviation(u.mat), 1e-9);
    const Eigen::Index n = u.dim();
    for (const auto* m : {&ap, &bp}) {
      ComplexMatrix d = u.mat.adjoint() * m->mat * u.mat;
      const double diag_imag = d.diagonal().imag().cwiseAbs().maxCoeff();
      d.diagonal().setZero();
      const double off = n > 1 ? d.cwiseAbs().maxCoeff() : 0.0;
      add(std::string(m == &ap ? "U* A' U" : "U* B' U") + " real diagonal",
          std::max(off, diag_imag), 1e-9 * scale_of(m->mat));
    }
  }
  return rep;
}

std::string demo_text() {
  std::ostringstream os;
  const StructuredPair pair = random_structured_pair(7, 4, Structure::SelfDual, 0.05,
                                                     PairMode::PerturbedCommuting);
  auto quaternion_rows = [&](const StructuredMatrix& m) {
    const QuaternionMatrix q = extract_quaternion(m, 1e-9);
    char buf[128];
    for (std::size_t r = 0; r < q.size(); ++r) {
      os << "    ";
      for (std::size_t c = 0; c < q.size(); ++c) {
        const Quaternion& e = q(r, c);
        std::snprintf(buf, sizeof buf, "(%+.4f %+.4fi %+.4fj %+.4fk)  ", e.w, e.x, e.y, e.z);
        os << buf;
      }
      os << '\n';
    }
  };
  auto eigenvalues = [&](const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    char buf[32];
    os << "    ";
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      std::snprintf(buf, sizeof buf, "%+.6f ", es.eigenvalues()(k));
      os << buf;
    }
    os << '\n';
  };

  os << "Self-dual 4x4 pair (2x2 quaternionic Hermitian), seed 7, delta 0.05\n\n";
  os << "A as a quaternion matrix:\n";
  quaternion_rows(pair.a);
  os << "B as a quaternion matrix:\n";
  quaternion_rows(pair.b);
  os << "\nEigenvalues of A (Kramers pairs):\n";
  eigenvalues(pair.a.mat);
  os << "Eigenvalues of B (Kramers pairs):\n";
  eigenvalues(pair.b.mat);

  const JointDiagResult res = pair_correct(pair.a, pair.b);
  os << "\n||[A, B]||   = " << fmt(res.comm_before) << '\n';
  os << "\nCorrected A' as a quaternion matrix:\n";
  quaternion_rows(res.a_prime);
  os << "Corrected B' as a quaternion matrix:\n";
  quaternion_rows(res.b_prime);
  os << "\n||[A', B']|| = " << fmt(res.comm_after) << '\n';
  os << "||A - A'||   = " << fmt(res.dist_a) << '\n';
  os << "||B - B'||   = " << fmt(res.dist_b) << '\n';
  os << "A'^# = A'*   : defect " << fmt(reality_defect(res.a_prime)) << '\n';
  os << "group        : " << to_string(res.group) << ", " << res.sweeps << " sweeps, "
     << res.rotations << " rotations\n";
  return os.str();
}

}  // namespace acp
