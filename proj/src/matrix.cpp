#include "acp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acp/error.hpp"

namespace acp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RealityViolation: return "RealityViolation";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::AtCenter: return "AtCenter";
    case ErrorCode::StructureMismatch: return "StructureMismatch";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::NotSelfTau: return "NotSelfTau";
    case ErrorCode::TooFarFromGroup: return "TooFarFromGroup";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Validation: return "Validation";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  // The top eigenvalue of A*A carries full relative accuracy for sigma_max.
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const ComplexMatrix s = a / scale;
  const ComplexMatrix gram = s.adjoint() * s;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
  const double top = std::max(es.eigenvalues().maxCoeff(), 0.0);
  return scale * std::sqrt(top);
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "commutator_norm: shapes " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                    "x" + std::to_string(b.cols()) + " differ");
  }
  return operator_norm(a * b - b * a);
}

double min_singular_value(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().minCoeff();
}

double hermitian_defect(const ComplexMatrix& a) {
  return operator_norm(a - a.adjoint());
}

double normality_defect(const ComplexMatrix& a) {
  return operator_norm(a.adjoint() * a - a * a.adjoint());
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return (a + a.adjoint()) * 0.5;
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": matrix must be square and non-empty");
  }
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!a.allFinite()) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + ": matrix has non-finite entries");
  }
}

}  // namespace acp
