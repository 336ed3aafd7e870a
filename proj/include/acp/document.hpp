#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "acp/jadiag.hpp"

namespace acp {

using json = nlohmann::json;

/// Tolerance applied to the declared structure when a document is loaded.
inline constexpr double kLoadTol = 1e-8;

/// A pair of matrices as stored on disk.
///
/// Matrices are row-major arrays of [re, im] pairs. "real" and "selfdual"
/// store the ambient matrix ("selfdual" needs even n); "complex" stores the
/// physical n x n Hermitian matrix, which is doubled on load; "generalized"
/// stores the ambient matrix together with its reflection matrix "S".
struct PairDocument {
  Structure structure;
  Eigen::Index n;
  StructuredMatrix a;
  StructuredMatrix b;
  json raw;
};

ComplexMatrix matrix_from_json(const json& j, Eigen::Index n, const std::string& name);
json matrix_to_json(const ComplexMatrix& m);

/// The ambient structured matrix for a physical matrix in the document format.
StructuredMatrix to_ambient(Structure s, const ComplexMatrix& physical, const Reflection* generalized);
/// Physical matrix written to documents.
ComplexMatrix to_physical(Structure s, const ComplexMatrix& ambient);

/// Throws Parse for malformed content and, when `validate` is set, Validation
/// if A or B is not self-adjoint and self-tau within kLoadTol.
PairDocument parse_pair_document(const json& j, bool validate = true);
PairDocument parse_pair_text(const std::string& text, bool validate = true);
PairDocument load_pair_document(const std::filesystem::path& path, bool validate = true);

/// Exact projection onto the self-adjoint self-tau matrices; moves a validated
/// document by at most kLoadTol.
StructuredMatrix project_structure(const StructuredMatrix& m);

/// Solve the document's pair. Distances are measured against the matrices as
/// loaded.
JointDiagResult correct_document(const PairDocument& doc, const SolverOptions& opts = {});

json result_document(const PairDocument& doc, const JointDiagResult& res);

struct VerifyItem {
  std::string name;
  double value;
  double threshold;
  bool passed;
};

struct VerifyReport {
  std::vector<VerifyItem> items;

  bool passed() const;
  std::string format() const;
};

/// Recomputes every invariant from the raw matrices of a pair or result
/// document. Throws Parse only if the document cannot be read at all.
VerifyReport verify_document(const json& j);

/// The worked 4 x 4 self-dual example printed by `acp demo`.
std::string demo_text();

}  // namespace acp
