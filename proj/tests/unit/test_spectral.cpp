#include "doctest.h"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "acp/ensemble.hpp"
#include "acp/error.hpp"
#include "acp/spectral.hpp"
#include "helpers.hpp"

using namespace acp;
using acp::test::dist;
using acp::test::I;
using acp::test::mat;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("normal_eig") {
  SUBCASE("diag(1, i)") {
    const NormalEig e = normal_eig(mat({{1, 0}, {0, I}}));
    const bool ordered = std::abs(e.values(0) - 1.0) < 1e-15;
    CHECK(std::abs(e.values(ordered ? 0 : 1) - 1.0) <= 1e-15);
    CHECK(std::abs(e.values(ordered ? 1 : 0) - I) <= 1e-15);
    CHECK(e.vectors.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
  }
  SUBCASE("Hermitian input has real values") {
    Rng rng(1);
    const ComplexMatrix h = hermitian_part(random_complex_gaussian(rng, 8));
    const NormalEig e = normal_eig(h);
    CHECK(e.values.imag().cwiseAbs().maxCoeff() <= 1e-12 * operator_norm(h));
  }
  SUBCASE("recovers a conjugated diagonal") {
    Rng rng(2);
    const ComplexMatrix u = random_unitary(rng, 6);
    Eigen::VectorXcd d(6);
    d << cplx(1, 0), cplx(0.5, -0.5), cplx(-0.3, 0.9), cplx(0, 0), cplx(0.7, 0.7), cplx(-1, 0.1);
    const ComplexMatrix a = u * d.asDiagonal() * u.adjoint();
    const NormalEig e = normal_eig(a);
    CHECK(dist(a * e.vectors, e.vectors * e.values.asDiagonal()) <= 1e-10 * operator_norm(a));
    CHECK(dist(e.vectors.adjoint() * e.vectors, ComplexMatrix::Identity(6, 6)) <= 1e-12);
    for (Eigen::Index k = 0; k < 6; ++k) {
      double best = 1e300;
      for (Eigen::Index l = 0; l < 6; ++l) best = std::min(best, std::abs(e.values(l) - d(k)));
      CHECK(best <= 1e-9);
    }
  }
  SUBCASE("rejects non-normal input") {
    CHECK(code_of([] { (void)normal_eig(mat({{0, 1}, {0, 0}})); }) == ErrorCode::NotNormal);
  }
}

TEST_CASE("fun_calc") {
  Rng rng(3);
  const StructuredMatrix a = random_normal_self_tau(rng, Reflection::dual(), 6);
  CHECK(dist(fun_calc(a, [](cplx z) { return z; }), a.mat) <= 1e-10);
  CHECK(dist(fun_calc(a, [](cplx) { return cplx(1.0); }), ComplexMatrix::Identity(6, 6)) <= 1e-12);

  const StructuredMatrix h(hermitian_part(random_complex_gaussian(rng, 5)), Reflection::transpose());
  const StructuredMatrix hs(symmetrize_self_tau(h), Reflection::transpose());
  CHECK(dist(fun_calc(hs, [](cplx z) { return z * z; }), hs.mat * hs.mat) <= 1e-10 * operator_norm(hs.mat * hs.mat));

  const ComplexMatrix e = fun_calc(a, [](cplx z) { return std::exp(z); });
  CHECK(is_self_tau(StructuredMatrix(e, a.tau), 1e-10));
  CHECK_THROWS_AS(fun_calc(StructuredMatrix(mat({{0, 1}, {0, 0}}), Reflection::transpose()),
                           [](cplx z) { return z; }),
                  Error);
}

TEST_CASE("perturb_to_invertible") {
  const Reflection t = Reflection::transpose();
  SUBCASE("zero matrix") {
    const StructuredMatrix b = perturb_to_invertible(StructuredMatrix(ComplexMatrix::Zero(3, 3), t), 0.1);
    const cplx t0 = b.mat(0, 0);
    CHECK(t0.real() > 0.0);
    CHECK(t0.real() < 0.1);
    CHECK(dist(b.mat, t0 * ComplexMatrix::Identity(3, 3)) <= 1e-15);
  }
  SUBCASE("diag(0, 1)") {
    const StructuredMatrix a(mat({{0, 0}, {0, 1}}), t);
    const StructuredMatrix b = perturb_to_invertible(a, 0.5);
    CHECK(dist(a.mat, b.mat) < 0.5);
    CHECK(std::abs(b.mat.determinant()) > 0.0);
    // det((1 - t) A + t I) = t
    CHECK(std::abs(b.mat.determinant() - b.mat(0, 0)) <= 1e-15);
  }
  SUBCASE("well-conditioned input comes back unchanged") {
    const StructuredMatrix a(mat({{2, 1}, {1, 3}}), t);
    CHECK(perturb_to_invertible(a, 0.1).mat == a.mat);
  }
  SUBCASE("identity") {
    const StructuredMatrix a(ComplexMatrix::Identity(4, 4), Reflection::dual());
    CHECK(perturb_to_invertible(a, 0.1).mat == a.mat);
  }
  SUBCASE("random singular self-tau inputs") {
    Rng rng(4);
    for (int k = 0; k < 30; ++k) {
      const Reflection tau = k % 2 ? Reflection::dual() : random_generalized_reflection(rng, 6, 1);
      // rank-deficient: an eigenvalue of exactly zero
      StructuredMatrix x = random_normal_self_tau(rng, tau, 6);
      const NormalEig e = normal_eig(x.mat);
      Eigen::VectorXcd v = e.values;
      v(0) = 0.0;
      if (tau.symmetry_sign() < 0) {
        // Kramers partner of eigenvalue 0
        Eigen::Index partner = 1;
        double best = 1e300;
        for (Eigen::Index l = 1; l < 6; ++l)
          if (std::abs(e.values(l) - e.values(0)) < best) best = std::abs(e.values(l) - e.values(0)), partner = l;
        v(partner) = 0.0;
      }
      const StructuredMatrix a(e.vectors * v.asDiagonal() * e.vectors.adjoint(), tau);
      const double eps = 0.05;
      const StructuredMatrix b = perturb_to_invertible(a, eps);
      CHECK(dist(a.mat, b.mat) < eps);
      CHECK(min_singular_value(b.mat) > 1e-14 * operator_norm(b.mat));
      CHECK(is_self_tau(b, 1e-12 + operator_norm(a.mat - a.tau.apply(a.mat))));
    }
  }
}

TEST_CASE("self_tau_polar") {
  const Reflection t = Reflection::transpose();
  SUBCASE("-I") {
    const PolarFactors f = self_tau_polar(StructuredMatrix(-ComplexMatrix::Identity(3, 3), t));
    CHECK(dist(f.u, -ComplexMatrix::Identity(3, 3)) <= 1e-14);
    CHECK(dist(f.p, ComplexMatrix::Identity(3, 3)) <= 1e-14);
  }
  SUBCASE("positive definite") {
    const ComplexMatrix p = mat({{2, 0.5}, {0.5, 1}});
    const PolarFactors f = self_tau_polar(StructuredMatrix(p, t));
    CHECK(dist(f.u, ComplexMatrix::Identity(2, 2)) <= 1e-10);
    CHECK(dist(f.p, p) <= 1e-10);
  }
  SUBCASE("complex symmetric 4x4 against a (a*a)^(-1/2)") {
    Rng rng(5);
    const StructuredMatrix a = random_self_tau(rng, t, 4);
    const PolarFactors f = self_tau_polar(a);
    CHECK(dist(f.u.transpose(), f.u) <= 1e-10);
    const StructuredMatrix gram(a.mat.adjoint() * a.mat, t);
    const ComplexMatrix inv_sqrt = fun_calc(gram, [](cplx z) { return 1.0 / std::sqrt(z.real()); });
    CHECK(dist(f.u, a.mat * inv_sqrt) <= 1e-10);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(f.p, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= 0.0);
  }
  SUBCASE("singular input") {
    const StructuredMatrix a(mat({{1, 0}, {0, 0}}), t);
    CHECK(code_of([&] { (void)self_tau_polar(a); }) == ErrorCode::Singular);
    const double eta = 1e-3;
    const PolarFactors f = self_tau_polar(a, PerturbSingular{eta});
    CHECK(dist(f.u * f.p, a.mat) <= eta + 1e-12);
    CHECK(dist(f.u.transpose(), f.u) <= 1e-10);
    CHECK(dist(f.u.adjoint() * f.u, ComplexMatrix::Identity(2, 2)) <= 1e-11);
  }
}

TEST_CASE("grid geometry") {
  const GridSpec g(1.0);
  CHECK(g.on_grid(cplx(2.0, 0.37)));
  CHECK(g.on_grid(cplx(0.37, -3.0)));
  CHECK_FALSE(g.on_grid(cplx(0.5, 0.5)));
  CHECK(g.cell_center(cplx(0.3, 0.2)) == cplx(0.5, 0.5));
  // a corner belongs to the cell with the smallest center
  CHECK(g.cell_center(cplx(1.0, 1.0)) == cplx(0.5, 0.5));
  CHECK(g.cell_center(cplx(-1.0, 0.0)) == cplx(-1.5, -0.5));
  CHECK(g.distance_to_grid(cplx(0.3, 0.2)) == doctest::Approx(0.2));
  CHECK(g.distance_to_center(cplx(0.5, 0.5)) == 0.0);
  CHECK_THROWS_AS(GridSpec(0.0), Error);
}

TEST_CASE("grid_retract_point") {
  const GridSpec g(1.0);
  CHECK(grid_retract_point(cplx(2.0, 0.37), g) == cplx(2.0, 0.37));
  const cplx r = grid_retract_point(cplx(0.3, 0.2), g);
  CHECK(std::abs(r - cplx(1.0 / 6.0, 0.0)) <= 1e-15);
  CHECK(code_of([&] { (void)grid_retract_point(cplx(0.5, 0.5), g); }) == ErrorCode::AtCenter);

  const GridSpec g2(0.25);
  const cplx c = g2.cell_center(cplx(0.1, 0.1));
  double worst = 0;
  for (int k = 0; k < 360; ++k) {
    const double th = 2 * std::numbers::pi * k / 360.0;
    const cplx z = c + 1e-9 * std::polar(1.0, th);
    const cplx fz = grid_retract_point(z, g2);
    worst = std::max(worst, std::abs(fz - z));
    CHECK(g2.on_grid(fz, 1e-15));
    CHECK(grid_retract_point(fz, g2) == fz);
  }
  CHECK(worst <= std::numbers::sqrt2 / 2 * 0.25);
  CHECK(worst >= std::numbers::sqrt2 / 2 * 0.25 - 1e-8);
}

TEST_CASE("grid_project_matrix") {
  SUBCASE("self-adjoint input is already on the grid") {
    Rng rng(6);
    const StructuredMatrix x = random_self_adjoint_self_tau(rng, Reflection::dual(), 6);
    CHECK(grid_project_matrix(x, GridSpec(0.1)).mat == x.mat);
  }
  SUBCASE("1x1") {
    const StructuredMatrix x(mat({{cplx(0.3, 0.2)}}), Reflection::transpose());
    const StructuredMatrix y = grid_project_matrix(x, GridSpec(1.0));
    CHECK(std::abs(y.mat(0, 0) - 1.0 / 6.0) <= 1e-15);
  }
  SUBCASE("random normal self-tau 8x8") {
    Rng rng(7);
    const GridSpec g(0.25);
    for (const Reflection& tau : {Reflection::transpose(), Reflection::dual(),
                                  random_generalized_reflection(rng, 8, 1)}) {
      const StructuredMatrix x = random_normal_self_tau(rng, tau, 8);
      const StructuredMatrix y = grid_project_matrix(x, g);
      CHECK(dist(x.mat, y.mat) <= 0.25);
      CHECK(normality_defect(y.mat) <= 1e-12);
      CHECK(is_self_tau(y, 1e-10));
      const NormalEig e = normal_eig(y.mat);
      for (Eigen::Index k = 0; k < 8; ++k) CHECK(g.distance_to_grid(e.values(k)) <= 1e-9);
    }
  }
  SUBCASE("eigenvalue at a cell center is nudged") {
    const GridSpec g(1.0);
    const StructuredMatrix x(mat({{cplx(0.5, 0.5), 0}, {0, cplx(1.5, -0.5)}}), Reflection::transpose());
    const StructuredMatrix y = grid_project_matrix(x, g);
    CHECK(dist(x.mat, y.mat) <= 1.0);
    CHECK(g.on_grid(y.mat(0, 0), 1e-12));
    CHECK(g.on_grid(y.mat(1, 1), 1e-12));
  }
}
