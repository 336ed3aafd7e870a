#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "acp/algebra.hpp"
#include "acp/matrix.hpp"

namespace acp {

/// Default tolerance of the structural predicates.
inline constexpr double kStructTol = 1e-10;

/// A linear, *-preserving, anti-multiplicative involution on M_n.
///
/// Transpose: A -> A^T.  Dual: A -> J A^T J^{-1} with J = [[0, I], [-I, 0]]
/// (even n only).  Generalized(S): A -> S A^T S* for a unitary S with
/// S^T = +S or S^T = -S; Transpose and Dual are the fast paths for S = I and
/// S = J.
class Reflection {
 public:
  enum class Kind { Transpose, Dual, Generalized };

  static Reflection transpose() { return Reflection(Kind::Transpose, {}); }
  static Reflection dual() { return Reflection(Kind::Dual, {}); }
  /// Validates unitarity and (anti)symmetry of S within tol.
  static Reflection generalized(ComplexMatrix s, double tol = kStructTol);

  Kind kind() const { return kind_; }
  /// The matrix S; empty for Transpose and Dual.
  const ComplexMatrix& s() const { return s_; }
  /// +1 if S^T = S (Transpose, symmetric S), -1 if S^T = -S (Dual, antisymmetric S).
  int symmetry_sign() const { return sign_; }

  /// Throws DimensionMismatch if this reflection cannot act on n x n matrices.
  void check_dimension(Eigen::Index n) const;

  ComplexMatrix apply(const ComplexMatrix& a) const;

  /// S itself as a dense matrix (I for Transpose, J for Dual).
  ComplexMatrix as_matrix(Eigen::Index n) const;

  bool same_as(const Reflection& other, double tol = kStructTol) const;

  std::string describe() const;

 private:
  Reflection(Kind kind, ComplexMatrix s, int sign = 1)
      : kind_(kind), s_(std::move(s)), sign_(kind == Kind::Dual ? -1 : sign) {}

  Kind kind_;
  ComplexMatrix s_;
  int sign_ = 1;
};

/// J = [[0, I_m], [-I_m, 0]] of size 2m.
ComplexMatrix standard_symplectic_form(Eigen::Index two_m);

/// [[0, I_m], [I_m, 0]] of size 2m.
ComplexMatrix swap_form(Eigen::Index two_m);

struct StructuredMatrix {
  StructuredMatrix(ComplexMatrix m, Reflection t);

  ComplexMatrix mat;
  Reflection tau;

  Eigen::Index dim() const { return mat.rows(); }
};

ComplexMatrix apply_reflection(const StructuredMatrix& a);
bool is_self_tau(const StructuredMatrix& a, double tol);
/// (A + (A*)^tau) / 2; the result X satisfies X* = X^tau.
ComplexMatrix re_tau(const StructuredMatrix& a);
/// (A + A^tau) / 2.
ComplexMatrix symmetrize_self_tau(const StructuredMatrix& a);
/// ||X* - X^tau||, zero exactly on the real part.
double reality_defect(const StructuredMatrix& a);

// ---------------------------------------------------------------------------
// Quaternion correspondence: Re(M_2n(C), Dual) = M_n(H).

/// q = alpha + beta j with alpha = w + x i, beta = y + z i is sent to the block
/// [[alpha, beta], [-conj(beta), conj(alpha)]]; entrywise for matrices, with
/// the alpha block in the top-left n x n corner.
StructuredMatrix embed_quaternion(const QuaternionMatrix& q);

/// Inverse of embed_quaternion. Requires a Dual reflection and
/// ||X^# - X*|| <= tol, otherwise throws RealityViolation.
QuaternionMatrix extract_quaternion(const StructuredMatrix& x, double tol = kStructTol);

// ---------------------------------------------------------------------------
// Pair structures used by the ensembles, the solver front end and the files.

enum class Structure { Real, Complex, SelfDual, Generalized };

std::string_view to_string(Structure s);
std::optional<Structure> parse_structure(std::string_view name);

/// Reflection carried by a structure at ambient dimension n. Complex pairs
/// live in the doubled algebra M_n (+) M_n inside M_2n with the swap reflection,
/// so the ambient dimension is twice the physical one.
Reflection reflection_for(Structure s, Eigen::Index ambient_dim);

/// Ambient complex dimension for a physical dimension n.
Eigen::Index ambient_dimension(Structure s, Eigen::Index physical_dim);

/// diag(X, conj(X)) with the swap reflection: the complex Hermitian matrix X
/// seen as a self-adjoint self-tau element.
StructuredMatrix double_complex(const ComplexMatrix& x);

/// Top-left block of a doubled matrix.
ComplexMatrix undouble_complex(const ComplexMatrix& doubled);

/// True when `a` has the swap reflection and the block-diagonal doubled shape.
bool is_doubled_complex(const StructuredMatrix& a, double tol = kStructTol);

/// Lift a real / complex / quaternionic algebra matrix to its structured form.
StructuredMatrix lift(const RealAlgebraMatrix& m);
StructuredMatrix lift(const ComplexAlgebraMatrix& m);
StructuredMatrix lift(const QuaternionMatrix& m);

// ---------------------------------------------------------------------------
// Frames. For a reflection with S^T = +S there is a unitary W with S = W W^T;
// then W* A W is real for every real element A. For S^T = -S there is W with
// S = W J W^T, and W* A W is quaternionic. Transpose and Dual have W = I.

struct Frame {
  ComplexMatrix w;
  int symmetry_sign;  // +1: real frame, -1: quaternionic frame
};

Frame structure_frame(const Reflection& tau, Eigen::Index n);

}  // namespace acp
