#include "acp/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "acp/error.hpp"

namespace acp {

namespace {

std::string dims(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

Reflection Reflection::generalized(ComplexMatrix s, double tol) {
  require_square(s, "Reflection::generalized");
  require_finite(s, "Reflection::generalized");
  const Eigen::Index n = s.rows();
  const double unitary_defect =
      operator_norm(s * s.adjoint() - ComplexMatrix::Identity(n, n));
  if (unitary_defect > tol) {
    throw Error(ErrorCode::InvalidArgument,
                "generalized reflection: S is not unitary (||SS* - I|| = " +
                    std::to_string(unitary_defect) + ")");
  }
  const ComplexMatrix st = s.transpose();
  int sign = 0;
  if (operator_norm(st - s) <= tol) {
    sign = 1;
  } else if (operator_norm(st + s) <= tol) {
    sign = -1;
  } else {
    throw Error(ErrorCode::InvalidArgument,
                "generalized reflection: S must satisfy S^T = S or S^T = -S");
  }
  return Reflection(Kind::Generalized, std::move(s), sign);
}

void Reflection::check_dimension(Eigen::Index n) const {
  switch (kind_) {
    case Kind::Transpose:
      return;
    case Kind::Dual:
      if (n % 2 != 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    "dual reflection needs even dimension, got " + std::to_string(n));
      }
      return;
    case Kind::Generalized:
      if (s_.rows() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "generalized reflection: S is " + dims(s_.rows(), s_.cols()) +
                        " but matrix has dimension " + std::to_string(n));
      }
      return;
  }
}

ComplexMatrix Reflection::apply(const ComplexMatrix& a) const {
  require_square(a, "apply_reflection");
  check_dimension(a.rows());
  switch (kind_) {
    case Kind::Transpose:
      return a.transpose();
    case Kind::Dual: {
      // [[A11, A12], [A21, A22]] -> [[A22^T, -A12^T], [-A21^T, A11^T]]
      const Eigen::Index m = a.rows() / 2;
      ComplexMatrix out(a.rows(), a.cols());
      out.topLeftCorner(m, m) = a.bottomRightCorner(m, m).transpose();
      out.topRightCorner(m, m) = -a.topRightCorner(m, m).transpose();
      out.bottomLeftCorner(m, m) = -a.bottomLeftCorner(m, m).transpose();
      out.bottomRightCorner(m, m) = a.topLeftCorner(m, m).transpose();
      return out;
    }
    case Kind::Generalized:
      return s_ * a.transpose() * s_.adjoint();
  }
  return a;
}

ComplexMatrix Reflection::as_matrix(Eigen::Index n) const {
  check_dimension(n);
  switch (kind_) {
    case Kind::Transpose:
      return ComplexMatrix::Identity(n, n);
    case Kind::Dual:
      return standard_symplectic_form(n);
    case Kind::Generalized:
      return s_;
  }
  return s_;
}

bool Reflection::same_as(const Reflection& other, double tol) const {
  if (kind_ != Kind::Generalized && kind_ == other.kind_) return true;
  const Eigen::Index n = kind_ == Kind::Generalized ? s_.rows() : other.s_.rows();
  if (kind_ != Kind::Generalized && other.kind_ != Kind::Generalized) return false;
  if (kind_ == Kind::Dual && n % 2 != 0) return false;
  if (other.kind_ == Kind::Dual && n % 2 != 0) return false;
  // S1 A^T S1* = S2 A^T S2* for all A iff S2* S1 is a scalar.
  const ComplexMatrix m = other.as_matrix(n).adjoint() * as_matrix(n);
  const cplx lambda = m(0, 0);
  return operator_norm(m - lambda * ComplexMatrix::Identity(n, n)) <= tol;
}

std::string Reflection::describe() const {
  switch (kind_) {
    case Kind::Transpose: return "transpose";
    case Kind::Dual: return "dual";
    case Kind::Generalized:
      return sign_ > 0 ? "generalized(symmetric S)" : "generalized(antisymmetric S)";
  }
  return "?";
}

ComplexMatrix standard_symplectic_form(Eigen::Index two_m) {
  const Eigen::Index m = two_m / 2;
  ComplexMatrix j = ComplexMatrix::Zero(two_m, two_m);
  j.topRightCorner(m, m).setIdentity();
  j.bottomLeftCorner(m, m) = -ComplexMatrix::Identity(m, m);
  return j;
}

ComplexMatrix swap_form(Eigen::Index two_m) {
  const Eigen::Index m = two_m / 2;
  ComplexMatrix s = ComplexMatrix::Zero(two_m, two_m);
  s.topRightCorner(m, m).setIdentity();
  s.bottomLeftCorner(m, m).setIdentity();
  return s;
}

StructuredMatrix::StructuredMatrix(ComplexMatrix m, Reflection t)
    : mat(std::move(m)), tau(std::move(t)) {
  require_square(mat, "StructuredMatrix");
  require_finite(mat, "StructuredMatrix");
  tau.check_dimension(mat.rows());
}

ComplexMatrix apply_reflection(const StructuredMatrix& a) { return a.tau.apply(a.mat); }

bool is_self_tau(const StructuredMatrix& a, double tol) {
  return operator_norm(a.mat - a.tau.apply(a.mat)) <= tol;
}

ComplexMatrix re_tau(const StructuredMatrix& a) {
  return (a.mat + a.tau.apply(a.mat.adjoint())) * 0.5;
}

ComplexMatrix symmetrize_self_tau(const StructuredMatrix& a) {
  return (a.mat + a.tau.apply(a.mat)) * 0.5;
}

double reality_defect(const StructuredMatrix& a) {
  return operator_norm(a.mat.adjoint() - a.tau.apply(a.mat));
}

StructuredMatrix embed_quaternion(const QuaternionMatrix& q) {
  const auto n = static_cast<Eigen::Index>(q.size());
  ComplexMatrix x(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const Quaternion& e = q(r, c);
      const cplx alpha(e.w, e.x);
      const cplx beta(e.y, e.z);
      x(r, c) = alpha;
      x(r, n + c) = beta;
      x(n + r, c) = -std::conj(beta);
      x(n + r, n + c) = std::conj(alpha);
    }
  }
  return StructuredMatrix(std::move(x), Reflection::dual());
}

QuaternionMatrix extract_quaternion(const StructuredMatrix& x, double tol) {
  if (x.tau.kind() != Reflection::Kind::Dual) {
    throw Error(ErrorCode::StructureMismatch,
                "extract_quaternion: matrix carries the " + x.tau.describe() +
                    " reflection, expected dual");
  }
  const double defect = reality_defect(x);
  if (defect > tol) {
    throw Error(ErrorCode::RealityViolation,
                "extract_quaternion: ||X^# - X*|| = " + std::to_string(defect) +
                    " exceeds " + std::to_string(tol) +
                    "; the matrix is not in the real part of (M_2n, #)");
  }
  const Eigen::Index n = x.dim() / 2;
  QuaternionMatrix q(static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const cplx alpha = (x.mat(r, c) + std::conj(x.mat(n + r, n + c))) * 0.5;
      const cplx beta = (x.mat(r, n + c) - std::conj(x.mat(n + r, c))) * 0.5;
      q(r, c) = Quaternion(alpha.real(), alpha.imag(), beta.real(), beta.imag());
    }
  }
  return q;
}

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::Real: return "real";
    case Structure::Complex: return "complex";
    case Structure::SelfDual: return "selfdual";
    case Structure::Generalized: return "generalized";
  }
  return "?";
}

std::optional<Structure> parse_structure(std::string_view name) {
  if (name == "real") return Structure::Real;
  if (name == "complex") return Structure::Complex;
  if (name == "selfdual") return Structure::SelfDual;
  if (name == "generalized") return Structure::Generalized;
  return std::nullopt;
}

Reflection reflection_for(Structure s, Eigen::Index ambient_dim) {
  switch (s) {
    case Structure::Real:
      return Reflection::transpose();
    case Structure::SelfDual:
      if (ambient_dim % 2 != 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    "selfdual structure needs even dimension, got " +
                        std::to_string(ambient_dim));
      }
      return Reflection::dual();
    case Structure::Complex:
      if (ambient_dim % 2 != 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    "doubled complex structure needs even ambient dimension");
      }
      return Reflection::generalized(swap_form(ambient_dim));
    case Structure::Generalized:
      break;
  }
  throw Error(ErrorCode::InvalidArgument,
              "generalized structure has no canonical reflection; supply S");
}

Eigen::Index ambient_dimension(Structure s, Eigen::Index physical_dim) {
  if (physical_dim < 1) {
    throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  }
  if (s == Structure::SelfDual && physical_dim % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "selfdual structure needs even dimension, got " +
                    std::to_string(physical_dim));
  }
  return s == Structure::Complex ? 2 * physical_dim : physical_dim;
}

StructuredMatrix double_complex(const ComplexMatrix& x) {
  require_square(x, "double_complex");
  const Eigen::Index n = x.rows();
  ComplexMatrix d = ComplexMatrix::Zero(2 * n, 2 * n);
  d.topLeftCorner(n, n) = x;
  d.bottomRightCorner(n, n) = x.conjugate();
  return StructuredMatrix(std::move(d), reflection_for(Structure::Complex, 2 * n));
}

ComplexMatrix undouble_complex(const ComplexMatrix& doubled) {
  const Eigen::Index n = doubled.rows() / 2;
  return doubled.topLeftCorner(n, n);
}

bool is_doubled_complex(const StructuredMatrix& a, double tol) {
  if (a.tau.kind() != Reflection::Kind::Generalized || a.dim() % 2 != 0) return false;
  if (!a.tau.same_as(reflection_for(Structure::Complex, a.dim()), tol)) return false;
  const Eigen::Index n = a.dim() / 2;
  const double off = std::max(a.mat.topRightCorner(n, n).cwiseAbs().maxCoeff(),
                              a.mat.bottomLeftCorner(n, n).cwiseAbs().maxCoeff());
  const double mismatch =
      (a.mat.bottomRightCorner(n, n) - a.mat.topLeftCorner(n, n).conjugate())
          .cwiseAbs()
          .maxCoeff();
  return off <= tol && mismatch <= tol;
}

StructuredMatrix lift(const RealAlgebraMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  ComplexMatrix x(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) x(r, c) = m(r, c);
  return StructuredMatrix(std::move(x), Reflection::transpose());
}

StructuredMatrix lift(const ComplexAlgebraMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  ComplexMatrix x(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) x(r, c) = m(r, c);
  return double_complex(x);
}

StructuredMatrix lift(const QuaternionMatrix& m) { return embed_quaternion(m); }

namespace {

using Vec = Eigen::VectorXcd;

// Real frame of J(v) = S conj(v): orthonormal basis of {v : S conj(v) = v}.
ComplexMatrix real_frame(const ComplexMatrix& s) {
  const Eigen::Index n = s.rows();
  std::vector<Vec> candidates;
  candidates.reserve(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Vec e = Vec::Zero(n);
    e(k) = 1.0;
    candidates.push_back((e + s * e) * 0.5);
    candidates.push_back((e - s * e) * cplx(0.0, 0.5));
  }
  ComplexMatrix w(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    // Pivot on the largest residual; real coefficients keep vectors in the real subspace.
    double best = -1.0;
    Vec chosen;
    for (auto& v : candidates) {
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index p = 0; p < col; ++p) v -= w.col(p) * w.col(p).dot(v).real();
      const double nv = v.norm();
      if (nv > best) {
        best = nv;
        chosen = v;
      }
    }
    if (best < 1e-8) {
      throw Error(ErrorCode::InvalidArgument, "structure_frame: degenerate real subspace");
    }
    w.col(col) = chosen / best;
  }
  return w;
}

// Quaternionic frame: W with S = W J W^T, built from pairs (v, -S conj(v)).
ComplexMatrix quaternionic_frame(const ComplexMatrix& s) {
  const Eigen::Index n = s.rows();
  const Eigen::Index m = n / 2;
  ComplexMatrix w = ComplexMatrix::Zero(n, n);
  std::vector<Eigen::Index> filled;
  for (Eigen::Index k = 0; k < m; ++k) {
    double best = -1.0;
    Vec chosen;
    for (Eigen::Index c = 0; c < n; ++c) {
      Vec v = Vec::Zero(n);
      v(c) = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index p : filled) v -= w.col(p) * w.col(p).dot(v);
      const double nv = v.norm();
      if (nv > best) {
        best = nv;
        chosen = v;
      }
    }
    if (best < 1e-8) {
      throw Error(ErrorCode::InvalidArgument,
                  "structure_frame: degenerate quaternionic subspace");
    }
    const Vec v = chosen / best;
    w.col(k) = v;
    w.col(m + k) = -(s * v.conjugate());
    filled.push_back(k);
    filled.push_back(m + k);
  }
  return w;
}

}  // namespace

Frame structure_frame(const Reflection& tau, Eigen::Index n) {
  tau.check_dimension(n);
  switch (tau.kind()) {
    case Reflection::Kind::Transpose:
      return {ComplexMatrix::Identity(n, n), 1};
    case Reflection::Kind::Dual:
      return {ComplexMatrix::Identity(n, n), -1};
    case Reflection::Kind::Generalized:
      if (tau.symmetry_sign() > 0) return {real_frame(tau.s()), 1};
      if (n % 2 != 0) {
        throw Error(ErrorCode::DimensionMismatch,
                    "antisymmetric S requires even dimension");
      }
      return {quaternionic_frame(tau.s()), -1};
  }
  return {ComplexMatrix::Identity(n, n), 1};
}

}  // namespace acp
