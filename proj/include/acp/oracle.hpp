#pragma once

// Brute-force references for the tests. Nothing here calls into the solver or
// the Eigen decompositions; everything is built from elementary arithmetic.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "acp/algebra.hpp"
#include "acp/matrix.hpp"

namespace acp::oracle {

struct OracleReport {
  double best_value = 0.0;
  std::vector<double> argument;
  std::size_t grid_resolution = 0;
  int refinement_iterations = 0;
  /// Best value on the grid before refinement (best_value never exceeds it).
  double grid_value = 0.0;
};

using Sym2 = std::array<double, 3>;  // {m11, m12, m22}

struct BruteForce2x2 {
  double distance = 0.0;
  Sym2 a_prime{};
  Sym2 b_prime{};
  OracleReport report;
};

/// min ||A - A'|| + ||B - B'|| over commuting real symmetric 2x2 pairs, by
/// scanning the shared eigenbasis angle on [0, pi/2) with 10^4 points and
/// golden-section refinement to 1e-10.
BruteForce2x2 brute_force_2x2(const Sym2& a, const Sym2& b);

/// Operator norm of a real symmetric 2x2 matrix in closed form.
double sym2_norm(const Sym2& m);

/// Minimum total off-diagonal energy over rotations on coordinates (i, j):
/// 1 parameter for R, 2 for C, 4 for H (angle and a unit direction).
template <class T>
OracleReport numeric_rotation_min(std::span<const DenseMatrix<T>> mats, std::size_t i,
                                  std::size_t j);

/// Off-diagonal energy after conjugating by the rotation [[c, -conj(s)], [s, c]]
/// on (i, j), computed by explicit full matrix products.
template <class T>
double rotated_off_energy(std::span<const DenseMatrix<T>> mats, std::size_t i, std::size_t j,
                          double c, const T& s);

/// Power iteration on A*A; a lower bound on the operator norm.
double power_norm(const ComplexMatrix& a, int iters = 500);

}  // namespace acp::oracle
