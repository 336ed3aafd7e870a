#include "acp/jadiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "acp/error.hpp"

namespace acp {

const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Orthogonal: return "orthogonal";
    case GroupKind::Unitary: return "unitary";
    case GroupKind::SymplecticUnitary: return "symplectic-unitary";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Rotations

template <class T>
Rotation<T> rotation_solve(std::span<const DenseMatrix<T>> mats, std::size_t i, std::size_t j) {
  constexpr int d = Algebra<T>::dim;
  constexpr int g = d + 1;
  Eigen::Matrix<double, g, g> gram = Eigen::Matrix<double, g, g>::Zero();
  for (const auto& m : mats) {
    Eigen::Matrix<double, g, 1> v;
    v(0) = Algebra<T>::real(m(i, i)) - Algebra<T>::real(m(j, j));
    for (int k = 0; k < d; ++k) v(1 + k) = 2.0 * Algebra<T>::component(m(i, j), k);
    gram += v * v.transpose();
  }
  Rotation<T> rot;
  if (gram.cwiseAbs().maxCoeff() == 0.0) return rot;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, g, g>> es(gram);
  Eigen::Matrix<double, g, 1> w = es.eigenvectors().col(g - 1);
  if (w(0) < 0.0) w = -w;
  const double x = std::min(1.0, w(0));
  double y[4] = {0.0, 0.0, 0.0, 0.0};
  for (int k = 0; k < d; ++k) y[k] = w(1 + k);
  rot.c = std::sqrt((1.0 + x) * 0.5);
  rot.s = Algebra<T>::conj(Algebra<T>::from_components(y)) * (0.5 / rot.c);
  return rot;
}

template <class T>
void rotate_columns(DenseMatrix<T>& v, std::size_t i, std::size_t j, const Rotation<T>& rot) {
  const T sbar = Algebra<T>::conj(rot.s);
  for (std::size_t r = 0; r < v.size(); ++r) {
    const T vi = v(r, i);
    const T vj = v(r, j);
    v(r, i) = vi * rot.c + vj * rot.s;
    v(r, j) = vj * rot.c - vi * sbar;
  }
}

template <class T>
void apply_rotation(DenseMatrix<T>& m, std::size_t i, std::size_t j, const Rotation<T>& rot) {
  rotate_columns(m, i, j, rot);
  const T sbar = Algebra<T>::conj(rot.s);
  for (std::size_t c = 0; c < m.size(); ++c) {
    const T xi = m(i, c);
    const T xj = m(j, c);
    m(i, c) = rot.c * xi + sbar * xj;
    m(j, c) = rot.c * xj - rot.s * xi;
  }
  // Keep the 2x2 block exactly Hermitian.
  m(i, i) = T{Algebra<T>::real(m(i, i))};
  m(j, j) = T{Algebra<T>::real(m(j, j))};
  m(j, i) = Algebra<T>::conj(m(i, j));
}

template <class T>
DenseMatrix<T> polish_unitary(const DenseMatrix<T>& u) {
  const std::size_t n = u.size();
  const DenseMatrix<T> id = DenseMatrix<T>::identity(n);
  DenseMatrix<T> x = u;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 60; ++it) {
    const DenseMatrix<T> defect = x.adjoint() * x - id;
    const double err = std::sqrt(defect.frobenius2());
    if (err <= 1e-15 * std::sqrt(static_cast<double>(n)) || err >= prev) break;
    prev = err;
    // X <- X (3I - X*X) / 2 = X - X (X*X - I) / 2
    x -= (x * defect) * 0.5;
  }
  return x;
}

template Rotation<double> rotation_solve<double>(std::span<const DenseMatrix<double>>, std::size_t, std::size_t);
template Rotation<cplx> rotation_solve<cplx>(std::span<const DenseMatrix<cplx>>, std::size_t, std::size_t);
template Rotation<Quaternion> rotation_solve<Quaternion>(std::span<const DenseMatrix<Quaternion>>, std::size_t, std::size_t);
template void apply_rotation<double>(DenseMatrix<double>&, std::size_t, std::size_t, const Rotation<double>&);
template void apply_rotation<cplx>(DenseMatrix<cplx>&, std::size_t, std::size_t, const Rotation<cplx>&);
template void apply_rotation<Quaternion>(DenseMatrix<Quaternion>&, std::size_t, std::size_t, const Rotation<Quaternion>&);
template void rotate_columns<double>(DenseMatrix<double>&, std::size_t, std::size_t, const Rotation<double>&);
template void rotate_columns<cplx>(DenseMatrix<cplx>&, std::size_t, std::size_t, const Rotation<cplx>&);
template void rotate_columns<Quaternion>(DenseMatrix<Quaternion>&, std::size_t, std::size_t, const Rotation<Quaternion>&);
template DenseMatrix<double> polish_unitary<double>(const DenseMatrix<double>&);
template DenseMatrix<cplx> polish_unitary<cplx>(const DenseMatrix<cplx>&);
template DenseMatrix<Quaternion> polish_unitary<Quaternion>(const DenseMatrix<Quaternion>&);

// ---------------------------------------------------------------------------
// Moving between the ambient complex matrices and the algebra.

namespace {

using Index = Eigen::Index;

template <class T>
struct Tag {};

RealAlgebraMatrix to_algebra(const ComplexMatrix& m, Tag<double>) {
  const auto n = static_cast<std::size_t>(m.rows());
  RealAlgebraMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = m(Index(r), Index(c)).real();
  return out;
}

ComplexAlgebraMatrix to_algebra(const ComplexMatrix& m, Tag<cplx>) {
  const auto n = static_cast<std::size_t>(m.rows());
  ComplexAlgebraMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = m(Index(r), Index(c));
  return out;
}

QuaternionMatrix to_algebra(const ComplexMatrix& m, Tag<Quaternion>) {
  // Inputs were validated upstream; extraction averages the redundant blocks.
  return extract_quaternion(StructuredMatrix(m, Reflection::dual()),
                            std::numeric_limits<double>::infinity());
}

ComplexMatrix to_complex(const RealAlgebraMatrix& m) {
  const auto n = static_cast<Index>(m.size());
  ComplexMatrix out(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) out(r, c) = m(std::size_t(r), std::size_t(c));
  return out;
}

ComplexMatrix to_complex(const ComplexAlgebraMatrix& m) {
  const auto n = static_cast<Index>(m.size());
  ComplexMatrix out(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) out(r, c) = m(std::size_t(r), std::size_t(c));
  return out;
}

ComplexMatrix to_complex(const QuaternionMatrix& m) { return embed_quaternion(m).mat; }

// Operator norm of an algebra matrix; equals the norm of its ambient lift.
template <class T>
double algebra_norm(const DenseMatrix<T>& m) {
  return operator_norm(to_complex(m));
}

ComplexMatrix doubled(const ComplexMatrix& x) {
  const Index n = x.rows();
  ComplexMatrix d = ComplexMatrix::Zero(2 * n, 2 * n);
  d.topLeftCorner(n, n) = x;
  d.bottomRightCorner(n, n) = x.conjugate();
  return d;
}

template <class T>
DenseMatrix<T> ambient_to_algebra(const ComplexMatrix& a, const StructureGroup& group) {
  if (group.kind == GroupKind::Unitary) {
    const Index n = a.rows() / 2;
    const ComplexMatrix block = (a.topLeftCorner(n, n) + a.bottomRightCorner(n, n).conjugate()) * 0.5;
    return to_algebra(block, Tag<T>{});
  }
  return to_algebra(group.frame.adjoint() * a * group.frame, Tag<T>{});
}

template <class T>
ComplexMatrix algebra_to_ambient(const DenseMatrix<T>& m, const StructureGroup& group) {
  if (group.kind == GroupKind::Unitary) return doubled(to_complex(m));
  return group.frame * to_complex(m) * group.frame.adjoint();
}

// Diagonalizer in ambient coordinates.
template <class T>
ComplexMatrix diagonalizer_to_ambient(const DenseMatrix<T>& v, const StructureGroup& group) {
  if (group.kind == GroupKind::Unitary) return doubled(to_complex(v));
  return group.frame * to_complex(v);
}

template <class T>
DenseMatrix<T> diagonalizer_to_algebra(const ComplexMatrix& u, const StructureGroup& group) {
  if (group.kind == GroupKind::Unitary) {
    const Index n = u.rows() / 2;
    return to_algebra((u.topLeftCorner(n, n) + u.bottomRightCorner(n, n).conjugate()) * 0.5,
                      Tag<T>{});
  }
  const ComplexMatrix inner = group.frame.adjoint() * u;
  if constexpr (std::is_same_v<T, Quaternion>) {
    // Project onto the real part of (M_2n, #) before reading off quaternions.
    return to_algebra(re_tau(StructuredMatrix(inner, Reflection::dual())), Tag<T>{});
  } else {
    return to_algebra(inner, Tag<T>{});
  }
}

double local_off_energy(const auto& m, std::size_t i, std::size_t j) {
  using T = std::decay_t<decltype(m(0, 0))>;
  double e = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k != i) e += Algebra<T>::norm2(m(i, k)) + Algebra<T>::norm2(m(k, i));
    if (k != j) e += Algebra<T>::norm2(m(j, k)) + Algebra<T>::norm2(m(k, j));
  }
  // (i, j) and (j, i) were each counted twice.
  e -= Algebra<T>::norm2(m(i, j)) + Algebra<T>::norm2(m(j, i));
  return e;
}

template <class T>
struct AlgebraSolution {
  DenseMatrix<T> v;
  DenseMatrix<T> a_prime;
  DenseMatrix<T> b_prime;
  int sweeps = 0;
  int rotations = 0;
  double off_energy = 0.0;
  std::vector<double> trace;
  bool monotone = true;
  double residue = 0.0;
  double polish_gain = 0.0;
};

template <class T>
double nonreal_modulus(const T& x) {
  return std::sqrt(std::max(0.0, Algebra<T>::norm2(x) - Algebra<T>::real(x) * Algebra<T>::real(x)));
}

// A' = V diag(Re diag(V* A V)) V*.
template <class T>
DenseMatrix<T> commit_diagonal(const DenseMatrix<T>& v, const DenseMatrix<T>& a, double* residue) {
  const std::size_t n = v.size();
  const DenseMatrix<T> av = a * v;
  DenseMatrix<T> vd(n);
  for (std::size_t k = 0; k < n; ++k) {
    T dk{};
    for (std::size_t r = 0; r < n; ++r) dk += Algebra<T>::conj(v(r, k)) * av(r, k);
    if (residue) *residue = std::max(*residue, nonreal_modulus(dk));
    const double re = Algebra<T>::real(dk);
    for (std::size_t r = 0; r < n; ++r) vd(r, k) = v(r, k) * re;
  }
  return (vd * v.adjoint()).hermitian_part();
}

template <class T>
double pair_objective(const DenseMatrix<T>& v, const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  return algebra_norm(a - commit_diagonal(v, a, nullptr)) +
         algebra_norm(b - commit_diagonal(v, b, nullptr));
}

template <class T>
Rotation<T> direction_rotation(double theta, int direction) {
  double comp[4] = {0.0, 0.0, 0.0, 0.0};
  comp[direction] = std::sin(theta);
  return Rotation<T>{std::cos(theta), Algebra<T>::from_components(comp)};
}

// Coordinate descent on the true objective over Givens directions. Each line
// search scans a full period of the angle and refines the three best basins.
template <class T>
double polish_objective(DenseMatrix<T>& v, const DenseMatrix<T>& a, const DenseMatrix<T>& b,
                        const SolverOptions& opts) {
  const std::size_t n = v.size();
  const double start = pair_objective(v, a, b);
  double current = start;
  const int scan = std::max(16, opts.polish_scan);
  const double quarter = std::numbers::pi / 4.0;
  const double step = 2.0 * quarter / scan;
  for (int pass = 0; pass < opts.polish_max_passes; ++pass) {
    const double pass_start = current;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (int dir = 0; dir < Algebra<T>::dim; ++dir) {
          auto value_at = [&](double theta) {
            DenseMatrix<T> trial = v;
            rotate_columns(trial, i, j, direction_rotation<T>(theta, dir));
            return pair_objective(trial, a, b);
          };
          std::vector<double> values(static_cast<std::size_t>(scan));
          for (int k = 0; k < scan; ++k) values[std::size_t(k)] = value_at(-quarter + k * step);
          std::vector<int> minima;
          for (int k = 0; k < scan; ++k) {
            const double left = values[std::size_t((k + scan - 1) % scan)];
            const double right = values[std::size_t((k + 1) % scan)];
            if (values[std::size_t(k)] <= left && values[std::size_t(k)] <= right) minima.push_back(k);
          }
          std::sort(minima.begin(), minima.end(), [&](int x, int y) {
            return values[std::size_t(x)] < values[std::size_t(y)];
          });
          if (minima.size() > 3) minima.resize(3);
          double best_theta = 0.0;
          double best_value = current;
          for (int k : minima) {
            double lo = -quarter + (k - 1) * step;
            double hi = -quarter + (k + 1) * step;
            const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
            double x1 = hi - inv_phi * (hi - lo);
            double x2 = lo + inv_phi * (hi - lo);
            double f1 = value_at(x1);
            double f2 = value_at(x2);
            while (hi - lo > 1e-12) {
              if (f1 <= f2) {
                hi = x2; x2 = x1; f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = value_at(x1);
              } else {
                lo = x1; x1 = x2; f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = value_at(x2);
              }
            }
            const double theta = f1 <= f2 ? x1 : x2;
            const double value = std::min(f1, f2);
            if (value < best_value) {
              best_value = value;
              best_theta = theta;
            }
          }
          if (best_value < current - 1e-15 * (1.0 + current)) {
            rotate_columns(v, i, j, direction_rotation<T>(best_theta, dir));
            v = polish_unitary(v);
            current = pair_objective(v, a, b);
          }
        }
      }
    }
    if (pass_start - current <= 1e-13 * (1.0 + current)) break;
  }
  return start - current;
}

template <class T>
AlgebraSolution<T> solve_in_algebra(const DenseMatrix<T>& a, const DenseMatrix<T>& b,
                                    const SolverOptions& opts) {
  const std::size_t n = a.size();
  std::vector<DenseMatrix<T>> mats{a, b};
  AlgebraSolution<T> sol;
  sol.v = DenseMatrix<T>::identity(n);
  const double total = a.frobenius2() + b.frobenius2();
  double energy = mats[0].off_diagonal_energy() + mats[1].off_diagonal_energy();
  sol.trace.push_back(energy);
  const double slack = std::max(1e-14 * energy, std::numeric_limits<double>::min());

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    int applied = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Rotation<T> rot = rotation_solve<T>(std::span<const DenseMatrix<T>>(mats), i, j);
        if (std::sqrt(Algebra<T>::norm2(rot.s)) <= 1e-15) continue;
        double before = 0.0;
        double after = 0.0;
        for (auto& m : mats) {
          before += local_off_energy(m, i, j);
          apply_rotation(m, i, j, rot);
          after += local_off_energy(m, i, j);
        }
        rotate_columns(sol.v, i, j, rot);
        if (after > before + slack) sol.monotone = false;
        ++applied;
      }
    }
    if (applied == 0) break;
    sol.rotations += applied;
    ++sol.sweeps;
    const double next = mats[0].off_diagonal_energy() + mats[1].off_diagonal_energy();
    if (next > energy + slack) sol.monotone = false;
    sol.trace.push_back(next);
    const double reduction = energy - next;
    energy = next;
    if (reduction < opts.rel_tol * total) break;
  }

  sol.v = polish_unitary(sol.v);
  const bool polish = opts.polish == Polish::On ||
                      (opts.polish == Polish::Auto && static_cast<int>(n) <= opts.polish_max_dim);
  if (polish && n >= 2) sol.polish_gain = polish_objective(sol.v, a, b, opts);

  sol.a_prime = commit_diagonal(sol.v, a, &sol.residue);
  sol.b_prime = commit_diagonal(sol.v, b, &sol.residue);
  // Off-diagonal energy of the inputs in the final basis.
  const DenseMatrix<T> vh = sol.v.adjoint();
  sol.off_energy = (vh * a * sol.v).off_diagonal_energy() + (vh * b * sol.v).off_diagonal_energy();
  return sol;
}

template <class T>
JointDiagResult solve_structured(const StructuredMatrix& a, const StructuredMatrix& b,
                                 const StructureGroup& group, const SolverOptions& opts) {
  const DenseMatrix<T> aa = ambient_to_algebra<T>(a.mat, group);
  const DenseMatrix<T> ba = ambient_to_algebra<T>(b.mat, group);
  AlgebraSolution<T> sol = solve_in_algebra(aa, ba, opts);
  JointDiagResult res{
      .u = diagonalizer_to_ambient(sol.v, group),
      .a_prime = StructuredMatrix(algebra_to_ambient(sol.a_prime, group), a.tau),
      .b_prime = StructuredMatrix(algebra_to_ambient(sol.b_prime, group), b.tau),
      .group = group.kind};
  res.sweeps = sol.sweeps;
  res.rotations = sol.rotations;
  res.off_energy = sol.off_energy;
  res.energy_trace = std::move(sol.trace);
  res.monotone = sol.monotone;
  res.diagonal_residue = sol.residue;
  res.polish_gain = sol.polish_gain;
  return res;
}

void check_input(const StructuredMatrix& m, const char* name) {
  const double scale = std::max(1.0, operator_norm(m.mat));
  const double herm = hermitian_defect(m.mat);
  if (herm > 1e-10 * scale) {
    throw Error(ErrorCode::NotSelfAdjoint, std::string("joint_diag: ") + name +
                                               " is not self-adjoint (||M - M*|| = " +
                                               std::to_string(herm) + ")");
  }
  const double tau_defect = operator_norm(m.mat - apply_reflection(m));
  if (tau_defect > 1e-10 * scale) {
    throw Error(ErrorCode::NotSelfTau, std::string("joint_diag: ") + name +
                                           " is not self-tau (||M - M^tau|| = " +
                                           std::to_string(tau_defect) + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Structure groups

StructureGroup structure_group_for(const StructuredMatrix& a) {
  if (is_doubled_complex(a)) {
    return {GroupKind::Unitary, ComplexMatrix::Identity(a.dim(), a.dim())};
  }
  Frame frame = structure_frame(a.tau, a.dim());
  return {frame.symmetry_sign > 0 ? GroupKind::Orthogonal : GroupKind::SymplecticUnitary,
          std::move(frame.w)};
}

double StructureGroup::deviation(const ComplexMatrix& u) const {
  const Index n = u.rows();
  double dev = operator_norm(u.adjoint() * u - ComplexMatrix::Identity(n, n));
  switch (kind) {
    case GroupKind::Orthogonal: {
      const ComplexMatrix inner = frame.adjoint() * u;
      dev = std::max(dev, inner.imag().cwiseAbs().maxCoeff());
      break;
    }
    case GroupKind::SymplecticUnitary: {
      const ComplexMatrix inner = frame.adjoint() * u;
      const ComplexMatrix j = standard_symplectic_form(n);
      dev = std::max(dev, operator_norm(inner.transpose() * j * inner - j));
      break;
    }
    case GroupKind::Unitary: {
      const Index m = n / 2;
      const double off = std::max(u.topRightCorner(m, m).cwiseAbs().maxCoeff(),
                                  u.bottomLeftCorner(m, m).cwiseAbs().maxCoeff());
      const double twin =
          (u.bottomRightCorner(m, m) - u.topLeftCorner(m, m).conjugate()).cwiseAbs().maxCoeff();
      dev = std::max({dev, off, twin});
      break;
    }
  }
  return dev;
}

ComplexMatrix project_to_group(const ComplexMatrix& u, const StructureGroup& group) {
  require_square(u, "project_to_group");
  require_finite(u, "project_to_group");
  if (u.rows() != group.frame.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "project_to_group: dimension differs from group");
  }
  const double dev = group.deviation(u);
  if (dev > 1e-3) {
    throw Error(ErrorCode::TooFarFromGroup,
                "project_to_group: deviation " + std::to_string(dev) + " exceeds 1e-3");
  }
  switch (group.kind) {
    case GroupKind::Orthogonal:
      return diagonalizer_to_ambient(polish_unitary(diagonalizer_to_algebra<double>(u, group)), group);
    case GroupKind::Unitary:
      return diagonalizer_to_ambient(polish_unitary(diagonalizer_to_algebra<cplx>(u, group)), group);
    case GroupKind::SymplecticUnitary:
      return diagonalizer_to_ambient(polish_unitary(diagonalizer_to_algebra<Quaternion>(u, group)),
                                     group);
  }
  return u;
}

// ---------------------------------------------------------------------------
// Entry points

JointDiagResult joint_diag(const StructuredMatrix& a, const StructuredMatrix& b,
                           const SolverOptions& opts) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "joint_diag: matrices have different dimensions");
  }
  if (!a.tau.same_as(b.tau)) {
    throw Error(ErrorCode::StructureMismatch, "joint_diag: matrices carry different reflections (" +
                                                  a.tau.describe() + " vs " + b.tau.describe() + ")");
  }
  if (opts.max_sweeps < 0 || !(opts.rel_tol >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "joint_diag: invalid solver options");
  }
  check_input(a, "A");
  check_input(b, "B");

  StructureGroup group = structure_group_for(a);
  if (group.kind == GroupKind::Unitary && !is_doubled_complex(b)) {
    const Frame frame = structure_frame(a.tau, a.dim());
    group = {GroupKind::Orthogonal, frame.w};
  }

  JointDiagResult res = [&] {
    switch (group.kind) {
      case GroupKind::Orthogonal: return solve_structured<double>(a, b, group, opts);
      case GroupKind::Unitary: return solve_structured<cplx>(a, b, group, opts);
      case GroupKind::SymplecticUnitary: return solve_structured<Quaternion>(a, b, group, opts);
    }
    throw Error(ErrorCode::InvalidArgument, "joint_diag: unknown group");
  }();
  res.dist_a = operator_norm(a.mat - res.a_prime.mat);
  res.dist_b = operator_norm(b.mat - res.b_prime.mat);
  res.eps_pair = res.dist_a + res.dist_b;
  res.comm_before = commutator_norm(a.mat, b.mat);
  res.comm_after = commutator_norm(res.a_prime.mat, res.b_prime.mat);
  return res;
}

JointDiagResult pair_correct(const StructuredMatrix& a, const StructuredMatrix& b,
                             const SolverOptions& opts) {
  const double scale = std::max(operator_norm(a.mat), operator_norm(b.mat));
  if (!(scale > 1.0)) return joint_diag(a, b, opts);
  const StructuredMatrix as(a.mat / scale, a.tau);
  const StructuredMatrix bs(b.mat / scale, b.tau);
  JointDiagResult res = joint_diag(as, bs, opts);
  res.a_prime.mat *= scale;
  res.b_prime.mat *= scale;
  res.scale = scale;
  res.dist_a = operator_norm(a.mat - res.a_prime.mat);
  res.dist_b = operator_norm(b.mat - res.b_prime.mat);
  res.eps_pair = res.dist_a + res.dist_b;
  res.comm_before = commutator_norm(a.mat, b.mat);
  res.comm_after = commutator_norm(res.a_prime.mat, res.b_prime.mat);
  return res;
}

NormalCorrection normal_correct(const StructuredMatrix& x, const SolverOptions& opts) {
  const double scale = std::max(1.0, operator_norm(x.mat));
  const double tau_defect = operator_norm(x.mat - apply_reflection(x));
  if (tau_defect > 1e-10 * scale) {
    throw Error(ErrorCode::NotSelfTau, "normal_correct: X is not self-tau (||X - X^tau|| = " +
                                           std::to_string(tau_defect) + ")");
  }
  const ComplexMatrix xh = x.mat.adjoint();
  const StructuredMatrix a(hermitian_part(x.mat + xh), x.tau);
  const StructuredMatrix b(hermitian_part(cplx(0.0, -1.0) * (x.mat - xh)), x.tau);
  JointDiagResult pair = joint_diag(a, b, opts);
  ComplexMatrix xp = (pair.a_prime.mat + cplx(0.0, 1.0) * pair.b_prime.mat) * 0.5;
  const double distance = operator_norm(x.mat - xp);
  const double after = normality_defect(xp);
  const double pair_comm = commutator_norm(a.mat, b.mat);
  return NormalCorrection{StructuredMatrix(std::move(xp), x.tau), distance,
                          normality_defect(x.mat), after, pair_comm, std::move(pair)};
}

}  // namespace acp
