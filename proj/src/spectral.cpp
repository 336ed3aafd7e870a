#include "acp/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "acp/error.hpp"

namespace acp {

NormalEig normal_eig(const ComplexMatrix& a, double normality_tol) {
  require_square(a, "normal_eig");
  require_finite(a, "normal_eig");
  const double nrm = operator_norm(a);
  const double defect = normality_defect(a);
  if (defect > normality_tol * nrm * nrm) {
    throw Error(ErrorCode::NotNormal, "normal_eig: ||A*A - AA*|| = " + std::to_string(defect) +
                                          " exceeds " + std::to_string(normality_tol) +
                                          " * ||A||^2");
  }
  Eigen::ComplexSchur<ComplexMatrix> schur(a);
  const ComplexMatrix& t = schur.matrixT();
  NormalEig out;
  out.values = t.diagonal();
  out.vectors = schur.matrixU();
  out.schur_residual = t.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().norm();
  return out;
}

ComplexMatrix fun_calc(const NormalEig& eig, const ScalarFunction& f) {
  Eigen::VectorXcd fv(eig.values.size());
  for (Eigen::Index k = 0; k < fv.size(); ++k) fv(k) = f(eig.values(k));
  return eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix fun_calc(const StructuredMatrix& a, const ScalarFunction& f,
                       double normality_tol) {
  return fun_calc(normal_eig(a.mat, normality_tol), f);
}

StructuredMatrix perturb_to_invertible(const StructuredMatrix& a, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::InvalidArgument, "perturb_to_invertible: eps must be positive");
  }
  if (min_singular_value(a.mat) >= eps * 1e-3) return a;
  const Eigen::Index n = a.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const double dist_to_id = operator_norm(a.mat - id);
  if (dist_to_id == 0.0) return a;

  // B_t is singular exactly when (1 - t) lambda + t = 0 for some eigenvalue
  // lambda of A, i.e. t = lambda / (lambda - 1). Pick the admissible t that
  // keeps every eigenvalue of B_t furthest from zero.
  const Eigen::VectorXcd lambdas = Eigen::ComplexEigenSolver<ComplexMatrix>(a.mat, false).eigenvalues();
  const double t_max = eps / dist_to_id;
  constexpr std::array<double, 9> fractions{0.5, 1.0 / 3, 2.0 / 3, 0.25, 0.75, 0.2, 0.4, 0.6, 0.8};
  std::array<std::pair<double, double>, fractions.size()> ranked{};
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    const double t = fractions[k] * t_max;
    double closest = std::numeric_limits<double>::infinity();
    for (Eigen::Index e = 0; e < lambdas.size(); ++e)
      closest = std::min(closest, std::abs((1.0 - t) * lambdas(e) + t));
    ranked[k] = {closest, t};
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  for (const auto& [closest, t] : ranked) {
    ComplexMatrix b = (1.0 - t) * a.mat + t * id;
    const double smin = min_singular_value(b);
    if (smin > 1e-14 * operator_norm(b)) return StructuredMatrix(std::move(b), a.tau);
  }
  // Not reachable for finite spectra: at most n parameters are singular.
  throw Error(ErrorCode::Singular, "perturb_to_invertible: no invertible point found");
}

PolarFactors self_tau_polar(const StructuredMatrix& a, SingularPolicy policy) {
  StructuredMatrix work = a;
  if (const auto* perturb = std::get_if<PerturbSingular>(&policy)) {
    work = perturb_to_invertible(a, perturb->eta);
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(work.mat, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double smin = sv.size() ? sv(sv.size() - 1) : 0.0;
  if (!(smin > 1e-13 * smax)) {
    throw Error(ErrorCode::Singular, "self_tau_polar: smallest singular value " +
                                         std::to_string(smin) + " is numerically zero");
  }
  PolarFactors out;
  out.u = svd.matrixU() * svd.matrixV().adjoint();
  out.p = hermitian_part(svd.matrixV() * sv.cast<cplx>().asDiagonal() * svd.matrixV().adjoint());
  return out;
}

GridSpec::GridSpec(double e) : eps(e) {
  if (!(e > 0.0) || !std::isfinite(e)) {
    throw Error(ErrorCode::InvalidArgument, "GridSpec: eps must be positive and finite");
  }
}

namespace {

double distance_to_lattice(double x, double eps) {
  return std::abs(x - eps * std::round(x / eps));
}

double cell_center_coordinate(double x, double eps) {
  return (std::ceil(x / eps) - 0.5) * eps;
}

}  // namespace

bool GridSpec::on_grid(cplx z, double tol) const {
  return distance_to_lattice(z.real(), eps) <= tol || distance_to_lattice(z.imag(), eps) <= tol;
}

cplx GridSpec::cell_center(cplx z) const {
  return {cell_center_coordinate(z.real(), eps), cell_center_coordinate(z.imag(), eps)};
}

double GridSpec::distance_to_grid(cplx z) const {
  return std::min(distance_to_lattice(z.real(), eps), distance_to_lattice(z.imag(), eps));
}

double GridSpec::distance_to_center(cplx z) const { return std::abs(z - cell_center(z)); }

cplx grid_retract_point(cplx z, const GridSpec& grid) {
  if (grid.on_grid(z)) return z;
  const cplx c = grid.cell_center(z);
  const cplx d = z - c;
  if (std::abs(d) <= 1e-14 * grid.eps) {
    throw Error(ErrorCode::AtCenter, "grid_retract_point: point coincides with a cell center");
  }
  const double t = 0.5 * grid.eps / std::max(std::abs(d.real()), std::abs(d.imag()));
  cplx w = c + t * d;
  // Land exactly on the line that was hit.
  if (std::abs(d.real()) >= std::abs(d.imag())) {
    w.real(std::round(w.real() / grid.eps) * grid.eps);
  } else {
    w.imag(std::round(w.imag() / grid.eps) * grid.eps);
  }
  return w;
}

StructuredMatrix grid_project_matrix(const StructuredMatrix& x, const GridSpec& grid,
                                     double normality_tol) {
  const NormalEig eig = normal_eig(x.mat, normality_tol);
  const double on_tol = 1e-12 * grid.eps;
  bool all_on = true;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    all_on = all_on && grid.on_grid(eig.values(k), on_tol);
  if (all_on) return x;

  const double exclusion = 1e-6 * grid.eps;
  const double nudge = 1e-3 * grid.eps;
  auto avoid_centers = [&](cplx z) {
    if (grid.distance_to_center(z) >= exclusion) return z;
    const cplx real_shift = z + nudge;
    if (grid.distance_to_center(real_shift) >= exclusion) return real_shift;
    return z + cplx(0.0, nudge);
  };
  ComplexMatrix y = fun_calc(eig, [&](cplx z) {
    if (grid.on_grid(z, on_tol)) return z;
    return grid_retract_point(avoid_centers(z), grid);
  });
  return StructuredMatrix(std::move(y), x.tau);
}

}  // namespace acp
