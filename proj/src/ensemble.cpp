#include "acp/ensemble.hpp"

#include <cmath>
#include <string>

#include "acp/error.hpp"

namespace acp {

namespace {

template <class T>
T gaussian_scalar(Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  double c[4];
  for (int k = 0; k < Algebra<T>::dim; ++k) c[k] = nd(rng);
  return Algebra<T>::from_components(c);
}

template <class T>
double algebra_operator_norm(const DenseMatrix<T>& m) {
  return operator_norm(lift(m).mat);
}

template <class T>
DenseMatrix<T> real_diagonal(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  DenseMatrix<T> d(n);
  for (std::size_t k = 0; k < n; ++k) d(k, k) = T{ud(rng)};
  return d;
}

template <class T>
DenseMatrix<T> normalized_hermitian(Rng& rng, std::size_t n, double target) {
  DenseMatrix<T> h = random_hermitian<T>(rng, n);
  const double nrm = algebra_operator_norm(h);
  if (nrm > 0.0) h *= target / nrm;
  return h;
}

template <class T>
StructuredPair make_pair(std::uint64_t seed, std::size_t m, Structure structure, double delta,
                         PairMode mode) {
  Rng rng(seed);
  DenseMatrix<T> a;
  DenseMatrix<T> b;
  if (mode == PairMode::PerturbedCommuting) {
    const DenseMatrix<T> q = random_group_element<T>(rng, m);
    const DenseMatrix<T> qh = q.adjoint();
    a = (q * real_diagonal<T>(rng, m) * qh).hermitian_part();
    b = (q * real_diagonal<T>(rng, m) * qh).hermitian_part();
    if (delta > 0.0) {
      a += normalized_hermitian<T>(rng, m, delta);
      b += normalized_hermitian<T>(rng, m, delta);
    }
  } else {
    a = normalized_hermitian<T>(rng, m, 1.0);
    b = normalized_hermitian<T>(rng, m, 1.0);
  }
  const double scale = std::max(algebra_operator_norm(a), algebra_operator_norm(b));
  if (scale > 1.0) {
    a *= 1.0 / scale;
    b *= 1.0 / scale;
  }
  return StructuredPair{lift(a), lift(b), structure};
}

}  // namespace

template <class T>
DenseMatrix<T> random_gaussian(Rng& rng, std::size_t n) {
  DenseMatrix<T> g(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) g(r, c) = gaussian_scalar<T>(rng);
  return g;
}

template <class T>
DenseMatrix<T> random_group_element(Rng& rng, std::size_t n) {
  DenseMatrix<T> q = random_gaussian<T>(rng, n);
  // Modified Gram-Schmidt on columns with one reorthogonalization pass.
  // Scalars act on the right, which is the correct side for H^n.
  for (std::size_t c = 0; c < n; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < c; ++p) {
        T ip{};
        for (std::size_t r = 0; r < n; ++r) ip += Algebra<T>::conj(q(r, p)) * q(r, c);
        for (std::size_t r = 0; r < n; ++r) q(r, c) -= q(r, p) * ip;
      }
    }
    double nrm2 = 0.0;
    for (std::size_t r = 0; r < n; ++r) nrm2 += Algebra<T>::norm2(q(r, c));
    const double inv = 1.0 / std::sqrt(nrm2);
    for (std::size_t r = 0; r < n; ++r) q(r, c) *= inv;
  }
  return q;
}

template <class T>
DenseMatrix<T> random_hermitian(Rng& rng, std::size_t n) {
  return random_gaussian<T>(rng, n).hermitian_part();
}

template DenseMatrix<double> random_gaussian<double>(Rng&, std::size_t);
template DenseMatrix<cplx> random_gaussian<cplx>(Rng&, std::size_t);
template DenseMatrix<Quaternion> random_gaussian<Quaternion>(Rng&, std::size_t);
template DenseMatrix<double> random_group_element<double>(Rng&, std::size_t);
template DenseMatrix<cplx> random_group_element<cplx>(Rng&, std::size_t);
template DenseMatrix<Quaternion> random_group_element<Quaternion>(Rng&, std::size_t);
template DenseMatrix<double> random_hermitian<double>(Rng&, std::size_t);
template DenseMatrix<cplx> random_hermitian<cplx>(Rng&, std::size_t);
template DenseMatrix<Quaternion> random_hermitian<Quaternion>(Rng&, std::size_t);

ComplexMatrix random_complex_gaussian(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) g(r, c) = cplx(nd(rng), nd(rng));
  return g;
}

ComplexMatrix random_unitary(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_complex_gaussian(rng, n));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double ar = std::abs(r(k, k));
    if (ar > 0.0) q.col(k) *= r(k, k) / ar;
  }
  return q;
}

Reflection random_generalized_reflection(Rng& rng, Eigen::Index n, int sign) {
  const ComplexMatrix w = random_unitary(rng, n);
  if (sign > 0) return Reflection::generalized(w * w.transpose());
  if (n % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "antisymmetric reflection needs even dimension, got " + std::to_string(n));
  }
  ComplexMatrix s = w * standard_symplectic_form(n) * w.transpose();
  // Remove the symmetric roundoff so the validation tolerance is met exactly.
  s = (s - s.transpose()) * 0.5;
  return Reflection::generalized(std::move(s));
}

StructuredMatrix random_self_tau(Rng& rng, const Reflection& tau, Eigen::Index n) {
  StructuredMatrix g(random_complex_gaussian(rng, n), tau);
  return StructuredMatrix(symmetrize_self_tau(g), tau);
}

StructuredMatrix random_self_adjoint_self_tau(Rng& rng, const Reflection& tau,
                                              Eigen::Index n) {
  StructuredMatrix g(hermitian_part(random_complex_gaussian(rng, n)), tau);
  return StructuredMatrix(hermitian_part(symmetrize_self_tau(g)), tau);
}

StructuredMatrix random_normal_self_tau(Rng& rng, const Reflection& tau, Eigen::Index n) {
  const Frame frame = structure_frame(tau, n);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const double two_pi = 2.0 * std::acos(-1.0);
  ComplexMatrix inner(n, n);
  if (frame.symmetry_sign > 0) {
    // Real orthogonal G; any complex diagonal is transpose-fixed.
    const RealAlgebraMatrix g = random_group_element<double>(rng, static_cast<std::size_t>(n));
    ComplexMatrix gc(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) gc(r, c) = g(r, c);
    Eigen::VectorXcd d(n);
    for (Eigen::Index k = 0; k < n; ++k) d(k) = std::polar(std::sqrt(ud(rng)), two_pi * ud(rng));
    inner = gc * d.asDiagonal() * gc.transpose();
  } else {
    // Symplectic unitary G; dual-fixed diagonals are diag(d, d).
    const Eigen::Index m = n / 2;
    const ComplexMatrix g =
        embed_quaternion(random_group_element<Quaternion>(rng, static_cast<std::size_t>(m))).mat;
    Eigen::VectorXcd d(n);
    for (Eigen::Index k = 0; k < m; ++k) {
      d(k) = std::polar(std::sqrt(ud(rng)), two_pi * ud(rng));
      d(m + k) = d(k);
    }
    inner = g * d.asDiagonal() * g.adjoint();
  }
  return StructuredMatrix(frame.w * inner * frame.w.adjoint(), tau);
}

StructuredPair random_structured_pair(std::uint64_t seed, Eigen::Index n, Structure structure,
                                      double delta, PairMode mode) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorCode::InvalidArgument, "random_structured_pair: delta must be >= 0");
  }
  if (n < 1) {
    throw Error(ErrorCode::InvalidArgument, "random_structured_pair: n must be positive");
  }
  const auto un = static_cast<std::size_t>(n);
  switch (structure) {
    case Structure::Real:
      return make_pair<double>(seed, un, structure, delta, mode);
    case Structure::Complex:
      return make_pair<cplx>(seed, un, structure, delta, mode);
    case Structure::SelfDual:
      if (n % 2 != 0) {
        throw Error(ErrorCode::InvalidArgument,
                    "random_structured_pair: selfdual needs even ambient dimension, got " +
                        std::to_string(n));
      }
      return make_pair<Quaternion>(seed, un / 2, structure, delta, mode);
    case Structure::Generalized:
      break;
  }
  throw Error(ErrorCode::InvalidArgument,
              "random_structured_pair: generalized structure is not an ensemble");
}

}  // namespace acp
