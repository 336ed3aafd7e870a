#pragma once

#include <cstdint>
#include <random>

#include "acp/algebra.hpp"
#include "acp/reflection.hpp"

namespace acp {

using Rng = std::mt19937_64;

enum class PairMode { PerturbedCommuting, Independent };

struct StructuredPair {
  StructuredMatrix a;
  StructuredMatrix b;
  Structure structure;
};

/// Gaussian entries with unit-variance components.
template <class T>
DenseMatrix<T> random_gaussian(Rng& rng, std::size_t n);

/// Haar element of O(n), U(n) or Sp(n) via Gram-Schmidt QR of a Gaussian,
/// carried out in the algebra's own arithmetic.
template <class T>
DenseMatrix<T> random_group_element(Rng& rng, std::size_t n);

/// GOE / GUE / GSE-like draw: (G + G*)/2.
template <class T>
DenseMatrix<T> random_hermitian(Rng& rng, std::size_t n);

ComplexMatrix random_complex_gaussian(Rng& rng, Eigen::Index n);
ComplexMatrix random_unitary(Rng& rng, Eigen::Index n);

/// S = W W^T (sign +1) or S = W J W^T (sign -1) for a Haar unitary W.
Reflection random_generalized_reflection(Rng& rng, Eigen::Index n, int sign);

/// (G + G^tau)/2 for a complex Gaussian G.
StructuredMatrix random_self_tau(Rng& rng, const Reflection& tau, Eigen::Index n);

/// Self-adjoint and self-tau.
StructuredMatrix random_self_adjoint_self_tau(Rng& rng, const Reflection& tau,
                                              Eigen::Index n);

/// W G D G* W* with W the structure frame, G a random structure-group element
/// and D a tau-fixed complex diagonal with entries of modulus <= 1.
StructuredMatrix random_normal_self_tau(Rng& rng, const Reflection& tau, Eigen::Index n);

/// Instance generator for the pair experiments. `n` is the ambient complex
/// dimension for real and selfdual and the physical dimension for complex.
/// Both outputs are self-adjoint, self-tau and have operator norm <= 1.
StructuredPair random_structured_pair(std::uint64_t seed, Eigen::Index n, Structure structure,
                                      double delta, PairMode mode);

}  // namespace acp
