#pragma once

#include <complex>
#include <functional>
#include <variant>

#include "acp/reflection.hpp"

namespace acp {

/// Default normality tolerance, relative to ||A||^2.
inline constexpr double kNormalityTol = 1e-8;

struct NormalEig {
  Eigen::VectorXcd values;
  ComplexMatrix vectors;  // unitary, columns are eigenvectors
  /// Frobenius norm of the discarded strictly-upper Schur part.
  double schur_residual = 0.0;
};

/// Unitary diagonalization of a normal matrix through its complex Schur form.
/// Throws NotNormal if ||A*A - AA*|| > normality_tol * ||A||^2.
NormalEig normal_eig(const ComplexMatrix& a, double normality_tol = kNormalityTol);

using ScalarFunction = std::function<cplx(cplx)>;

/// V diag(f(lambda)) V* for a normal A.
ComplexMatrix fun_calc(const StructuredMatrix& a, const ScalarFunction& f,
                       double normality_tol = kNormalityTol);
ComplexMatrix fun_calc(const NormalEig& eig, const ScalarFunction& f);

/// B = (1 - t0) A + t0 I, self-tau, invertible and strictly within eps of A.
/// t0 avoids the singular parameters t = lambda / (lambda - 1), lambda in sigma(A).
/// Matrices already invertible with sigma_min >= 1e-3 eps come back unchanged.
StructuredMatrix perturb_to_invertible(const StructuredMatrix& a, double eps);

struct RejectSingular {};
struct PerturbSingular {
  double eta;
};
using SingularPolicy = std::variant<RejectSingular, PerturbSingular>;

struct PolarFactors {
  ComplexMatrix u;  // self-tau unitary
  ComplexMatrix p;  // (a*a)^{1/2}
};

/// a = u p with u unitary and self-tau. Under RejectSingular a matrix with
/// sigma_min <= 1e-13 ||a|| throws Singular; under PerturbSingular it is first
/// moved by perturb_to_invertible(eta).
PolarFactors self_tau_polar(const StructuredMatrix& a, SingularPolicy policy = RejectSingular{});

/// The eps-grid of lines {Re z in eps Z or Im z in eps Z} and its cell centers.
struct GridSpec {
  explicit GridSpec(double eps);
  double eps;

  bool on_grid(cplx z, double tol = 0.0) const;
  /// Center of the cell containing z; points on a line are assigned to the cell
  /// with the lexicographically smallest center.
  cplx cell_center(cplx z) const;
  double distance_to_grid(cplx z) const;
  double distance_to_center(cplx z) const;
};

/// Radial retraction of C \ Sigma_eps onto Gamma_eps. Throws AtCenter when z is
/// within 1e-14 eps of a cell center.
cplx grid_retract_point(cplx z, const GridSpec& grid);

/// Normal self-tau Y with sigma(Y) inside the grid and ||X - Y|| <= eps.
StructuredMatrix grid_project_matrix(const StructuredMatrix& x, const GridSpec& grid,
                                     double normality_tol = kNormalityTol);

}  // namespace acp
