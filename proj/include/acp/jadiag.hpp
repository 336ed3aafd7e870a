#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "acp/algebra.hpp"
#include "acp/reflection.hpp"

namespace acp {

enum class GroupKind { Orthogonal, Unitary, SymplecticUnitary };

const char* to_string(GroupKind kind);

/// Conjugations preserving self-adjointness and self-tau-ness of a pair.
///
/// Orthogonal and SymplecticUnitary act in a frame W (identity for Transpose
/// and Dual): the diagonalizer is U = W G with G real orthogonal or symplectic.
/// Unitary is the doubled complex case, U = diag(V, conj(V)).
struct StructureGroup {
  GroupKind kind;
  ComplexMatrix frame;

  /// ||U*U - I|| together with the deviation from the structure identity.
  double deviation(const ComplexMatrix& u) const;
};

StructureGroup structure_group_for(const StructuredMatrix& a);

template <class T>
struct Rotation {
  double c = 1.0;
  T s{};
};

/// Givens-type rotation on coordinates (i, j) maximizing the joint reduction
/// of off-diagonal energy over the given Hermitian matrices. The rotation is
///   U = [[c, -conj(s)], [s, c]]  acting as  M -> U* M U.
/// With v_k = (m_ii - m_jj, components of 2 m_ij) and G = sum v_k v_k^T, the
/// unit dominant eigenvector (x, y) of G with x >= 0 gives c = sqrt((1 + x)/2)
/// and s = conj(y) / (2c).
template <class T>
Rotation<T> rotation_solve(std::span<const DenseMatrix<T>> mats, std::size_t i, std::size_t j);

/// M -> U* M U on rows/columns (i, j).
template <class T>
void apply_rotation(DenseMatrix<T>& m, std::size_t i, std::size_t j, const Rotation<T>& rot);

/// V -> V U on columns (i, j).
template <class T>
void rotate_columns(DenseMatrix<T>& v, std::size_t i, std::size_t j, const Rotation<T>& rot);

/// Newton-Schulz polar iteration in the algebra's own arithmetic.
template <class T>
DenseMatrix<T> polish_unitary(const DenseMatrix<T>& u);

enum class Polish { Off, Auto, On };

struct SolverOptions {
  int max_sweeps = 100;
  double rel_tol = 1e-12;
  /// Direct descent on ||A - A'|| + ||B - B'|| after the Jacobi phase.
  /// Auto enables it when the algebra dimension is <= polish_max_dim.
  Polish polish = Polish::Auto;
  int polish_max_dim = 2;
  int polish_scan = 512;
  int polish_max_passes = 4;
};

struct JointDiagResult {
  ComplexMatrix u;  // diagonalizer: U* A' U and U* B' U are real diagonal
  StructuredMatrix a_prime;
  StructuredMatrix b_prime;
  GroupKind group = GroupKind::Unitary;
  int sweeps = 0;
  int rotations = 0;
  double off_energy = 0.0;
  /// Off-diagonal energy at the start and after every sweep.
  std::vector<double> energy_trace{};
  /// False if any accepted rotation raised the energy by more than 1e-14 * initial.
  bool monotone = true;
  double dist_a = 0.0;
  double dist_b = 0.0;
  double eps_pair = 0.0;
  double comm_before = 0.0;
  double comm_after = 0.0;
  /// Largest non-real part on the transformed diagonal (discarded).
  double diagonal_residue = 0.0;
  /// Reduction of eps_pair achieved by the polish phase.
  double polish_gain = 0.0;
  /// Joint scaling applied by pair_correct (1 when inputs were in the unit ball).
  double scale = 1.0;
};

/// Structure-group Jacobi joint diagonalization of a self-adjoint self-tau pair.
JointDiagResult joint_diag(const StructuredMatrix& a, const StructuredMatrix& b,
                           const SolverOptions& opts = {});

/// joint_diag with the pair scaled jointly into the unit ball and back.
JointDiagResult pair_correct(const StructuredMatrix& a, const StructuredMatrix& b,
                             const SolverOptions& opts = {});

struct NormalCorrection {
  StructuredMatrix x_prime;
  double distance = 0.0;          // ||X - X'||
  double normality_before = 0.0;  // ||[X, X*]||
  double normality_after = 0.0;
  double pair_commutator = 0.0;   // ||[A, B]|| for A = X + X*, B = -i(X - X*)
  JointDiagResult pair;
};

/// Nearby normal self-tau matrix through the pair A = X + X*, B = -i(X - X*).
NormalCorrection normal_correct(const StructuredMatrix& x, const SolverOptions& opts = {});

/// Nearest group element. Throws TooFarFromGroup if the deviation exceeds 1e-3.
ComplexMatrix project_to_group(const ComplexMatrix& u, const StructureGroup& group);

}  // namespace acp
