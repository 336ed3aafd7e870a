#include "doctest.h"

#include <array>
#include <cmath>
#include <functional>

#include "acp/ensemble.hpp"
#include "acp/error.hpp"
#include "acp/jadiag.hpp"
#include "acp/oracle.hpp"
#include "helpers.hpp"

using namespace acp;
using acp::test::dist;
using acp::test::I;
using acp::test::mat;

namespace {

// Oracle value for A = diag(1, -1), B = [[0, 1], [1, 0]], from brute_force_2x2.
constexpr double kPauliPairDistance = 1.0;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

void check_sound(const JointDiagResult& r) {
  const double scale = std::max({1.0, operator_norm(r.a_prime.mat), operator_norm(r.b_prime.mat)});
  CHECK(commutator_norm(r.a_prime.mat, r.b_prime.mat) <= 1e-10 * scale);
  for (const auto* m : {&r.a_prime, &r.b_prime}) {
    CHECK(hermitian_defect(m->mat) <= 1e-12 * scale);
    CHECK(is_self_tau(*m, 1e-12 * scale));
  }
  CHECK(r.monotone);
  const StructureGroup g = structure_group_for(r.a_prime);
  CHECK(g.deviation(r.u) <= 1e-10);
}

template <class T>
double energy(const std::vector<DenseMatrix<T>>& ms) {
  double e = 0;
  for (const auto& m : ms) e += m.off_diagonal_energy();
  return e;
}

template <class T>
void rotation_matches_oracle(std::uint64_t seed) {
  Rng rng(seed);
  for (int t = 0; t < 5; ++t) {
    std::vector<DenseMatrix<T>> ms = {random_hermitian<T>(rng, 4), random_hermitian<T>(rng, 4)};
    const std::size_t i = t % 3, j = 3;
    const Rotation<T> rot = rotation_solve<T>(ms, i, j);
    CHECK(rot.c * rot.c + Algebra<T>::norm2(rot.s) == doctest::Approx(1.0).epsilon(1e-14));
    const double closed = oracle::rotated_off_energy<T>(ms, i, j, rot.c, rot.s);
    const oracle::OracleReport rep = oracle::numeric_rotation_min<T>(ms, i, j);
    CHECK(closed <= rep.best_value + 1e-8);
    CHECK(std::abs(closed - rep.best_value) <= 1e-8);
    CHECK(rep.best_value <= rep.grid_value);

    const double before = energy(ms);
    for (auto& m : ms) apply_rotation(m, i, j, rot);
    CHECK(energy(ms) <= before + 1e-14 * before);
    CHECK(std::abs(energy(ms) - closed) <= 1e-10);
  }
}

}  // namespace

TEST_CASE("rotation_solve") {
  SUBCASE("diagonal input gives the identity rotation") {
    DenseMatrix<double> d(3);
    d(0, 0) = 1;
    d(1, 1) = 2;
    d(2, 2) = -1;
    const std::vector<DenseMatrix<double>> ms = {d, d};
    const Rotation<double> r = rotation_solve<double>(ms, 0, 2);
    CHECK(r.c == 1.0);
    CHECK(r.s == 0.0);
  }
  SUBCASE("single real matrix reproduces classical Jacobi") {
    Rng rng(1);
    DenseMatrix<double> m = random_hermitian<double>(rng, 3);
    const double aij = m(0, 1);
    const double before = m.off_diagonal_energy();
    const std::vector<DenseMatrix<double>> ms = {m};
    const Rotation<double> r = rotation_solve<double>(ms, 0, 1);
    // classical angle: tan(2 theta) = 2 a_ij / (a_ii - a_jj)
    const double theta = 0.5 * std::atan(2 * m(0, 1) / (m(0, 0) - m(1, 1)));
    CHECK(std::abs(std::abs(r.c) - std::abs(std::cos(theta))) <= 1e-12);
    apply_rotation(m, 0, 1, r);
    CHECK(std::abs(m(0, 1)) <= 1e-14);
    CHECK(before - m.off_diagonal_energy() == doctest::Approx(2 * aij * aij).epsilon(1e-12));
  }
  SUBCASE("real pairs against the numeric minimizer") { rotation_matches_oracle<double>(2); }
  SUBCASE("complex pairs against the numeric minimizer") { rotation_matches_oracle<cplx>(3); }
  SUBCASE("quaternion pairs against the numeric minimizer") { rotation_matches_oracle<Quaternion>(4); }
}

TEST_CASE("joint_diag examples") {
  const Reflection t = Reflection::transpose();
  SUBCASE("diagonal pair is left alone") {
    const StructuredMatrix a(mat({{1, 0}, {0, 2}}), t), b(mat({{3, 0}, {0, -1}}), t);
    const JointDiagResult r = joint_diag(a, b);
    CHECK(r.u == ComplexMatrix::Identity(2, 2));
    CHECK(r.a_prime.mat == a.mat);
    CHECK(r.b_prime.mat == b.mat);
    CHECK(r.rotations == 0);
    check_sound(r);
  }
  SUBCASE("commuting pair with a shared eigenbasis") {
    const StructuredMatrix a(mat({{2, 1}, {1, 2}}), t), b(mat({{0, 1}, {1, 0}}), t);
    const JointDiagResult r = joint_diag(a, b);
    CHECK(r.dist_a <= 1e-10);
    CHECK(r.dist_b <= 1e-10);
    check_sound(r);
  }
  SUBCASE("Pauli pair matches the oracle") {
    const StructuredMatrix a(mat({{1, 0}, {0, -1}}), t), b(mat({{0, 1}, {1, 0}}), t);
    const JointDiagResult r = joint_diag(a, b);
    const auto o = oracle::brute_force_2x2({1, 0, -1}, {0, 1, 0});
    CHECK(o.distance == doctest::Approx(kPauliPairDistance).epsilon(1e-9));
    CHECK(r.eps_pair <= o.distance + 1e-6);
    check_sound(r);
  }
  SUBCASE("errors") {
    const StructuredMatrix a(mat({{1, 0}, {0, 2}}), t);
    const StructuredMatrix d(ComplexMatrix::Identity(2, 2), Reflection::dual());
    CHECK(code_of([&] { (void)joint_diag(a, d); }) == ErrorCode::StructureMismatch);
    const StructuredMatrix nh(mat({{1, 1}, {0, 2}}), t);
    CHECK(code_of([&] { (void)joint_diag(nh, a); }) == ErrorCode::NotSelfAdjoint);
    const StructuredMatrix nt(mat({{1, I}, {-I, 2}}), t);
    CHECK(code_of([&] { (void)joint_diag(a, nt); }) == ErrorCode::NotSelfTau);
    const StructuredMatrix big(ComplexMatrix::Identity(3, 3), t);
    CHECK(code_of([&] { (void)joint_diag(a, big); }) == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("pair_correct") {
  SUBCASE("commuting input") {
    for (Structure s : {Structure::Real, Structure::Complex, Structure::SelfDual}) {
      const StructuredPair p = random_structured_pair(5, 6, s, 0.0, PairMode::PerturbedCommuting);
      const JointDiagResult r = pair_correct(p.a, p.b);
      CHECK(r.eps_pair <= 1e-9);
      check_sound(r);
    }
  }
  SUBCASE("perturbed ensemble, n = 8, delta = 1e-4, seed 42") {
    for (Structure s : {Structure::Real, Structure::Complex, Structure::SelfDual}) {
      const StructuredPair p = random_structured_pair(42, 8, s, 1e-4, PairMode::PerturbedCommuting);
      const JointDiagResult r = pair_correct(p.a, p.b);
      CHECK(r.eps_pair <= 1e-3);
      check_sound(r);
    }
  }
  SUBCASE("self-dual output stays in the real part") {
    const StructuredPair p = random_structured_pair(9, 8, Structure::SelfDual, 0.05, PairMode::PerturbedCommuting);
    const JointDiagResult r = pair_correct(p.a, p.b);
    CHECK(r.group == GroupKind::SymplecticUnitary);
    CHECK(reality_defect(r.a_prime) <= 1e-11);
    CHECK(reality_defect(r.b_prime) <= 1e-11);
    (void)extract_quaternion(r.a_prime, 1e-11);
  }
  SUBCASE("inputs outside the unit ball are scaled jointly") {
    const StructuredPair p = random_structured_pair(10, 5, Structure::Real, 0.1, PairMode::PerturbedCommuting);
    const StructuredMatrix a(7.0 * p.a.mat, p.a.tau), b(7.0 * p.b.mat, p.b.tau);
    const JointDiagResult small = pair_correct(p.a, p.b);
    const JointDiagResult large = pair_correct(a, b);
    CHECK(large.scale != 1.0);
    CHECK(large.eps_pair == doctest::Approx(7.0 * small.eps_pair).epsilon(1e-9));
    check_sound(large);
  }
  SUBCASE("generalized reflections use the frame") {
    Rng rng(11);
    for (int sign : {1, -1}) {
      const Reflection tau = random_generalized_reflection(rng, 6, sign);
      const StructuredMatrix a = random_self_adjoint_self_tau(rng, tau, 6);
      const StructuredMatrix b = random_self_adjoint_self_tau(rng, tau, 6);
      const JointDiagResult r = pair_correct(a, b);
      CHECK(r.group == (sign > 0 ? GroupKind::Orthogonal : GroupKind::SymplecticUnitary));
      check_sound(r);
    }
  }
  SUBCASE("independent pairs still produce sound output") {
    for (Structure s : {Structure::Real, Structure::Complex, Structure::SelfDual}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const StructuredPair p = random_structured_pair(seed, 8, s, 0.0, PairMode::Independent);
        const JointDiagResult r = pair_correct(p.a, p.b);
        check_sound(r);
        CHECK(r.energy_trace.front() >= r.energy_trace.back());
      }
    }
  }
}

TEST_CASE("equivariance under the structure group") {
  for (Structure s : {Structure::Real, Structure::Complex, Structure::SelfDual}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const StructuredPair p = random_structured_pair(100 + seed, 6, s, 1e-3, PairMode::PerturbedCommuting);
      Rng rng(seed);
      ComplexMatrix v;
      switch (s) {
        case Structure::Real: v = lift(random_group_element<double>(rng, 6)).mat; break;
        case Structure::Complex: v = lift(random_group_element<cplx>(rng, 6)).mat; break;
        default: v = lift(random_group_element<Quaternion>(rng, 3)).mat; break;
      }
      const StructuredMatrix va(hermitian_part(v * p.a.mat * v.adjoint()), p.a.tau);
      const StructuredMatrix vb(hermitian_part(v * p.b.mat * v.adjoint()), p.b.tau);
      const double e1 = pair_correct(p.a, p.b).eps_pair;
      const double e2 = pair_correct(va, vb).eps_pair;
      CHECK(std::abs(e1 - e2) <= 1e-9);
    }
  }
}

TEST_CASE("normal_correct") {
  SUBCASE("normal self-tau input is kept") {
    Rng rng(12);
    const StructuredMatrix x = random_normal_self_tau(rng, Reflection::transpose(), 6);
    const NormalCorrection c = normal_correct(x);
    CHECK(c.distance <= 1e-9);
  }
  SUBCASE("near-normal complex symmetric 2x2") {
    const StructuredMatrix x(0.5 * mat({{0, 1}, {1, cplx(0, 0.1)}}), Reflection::transpose());
    const NormalCorrection c = normal_correct(x);
    CHECK(normality_defect(c.x_prime.mat) <= 1e-10);
    CHECK(is_self_tau(c.x_prime, 1e-12));
    CHECK(c.distance <= 0.1);
    CHECK(c.normality_after <= 1e-10);
  }
  SUBCASE("commutator identity 2 ||[X, X*]|| = ||[A, B]||") {
    Rng rng(13);
    for (const Reflection& tau : {Reflection::transpose(), Reflection::dual()}) {
      const StructuredMatrix x = random_self_tau(rng, tau, 4);
      const NormalCorrection c = normal_correct(x);
      CHECK(2 * c.normality_before == doctest::Approx(c.pair_commutator).epsilon(1e-12));
      CHECK(normality_defect(c.x_prime.mat) <= 1e-10 * std::max(1.0, operator_norm(x.mat)));
      CHECK(is_self_tau(c.x_prime, 1e-12 * std::max(1.0, operator_norm(x.mat))));
    }
  }
  SUBCASE("rejects non-self-tau input") {
    const StructuredMatrix x(mat({{0, 1}, {0, 0}}), Reflection::transpose());
    CHECK(code_of([&] { (void)normal_correct(x); }) == ErrorCode::NotSelfTau);
  }
}

TEST_CASE("project_to_group") {
  SUBCASE("identity and exact elements") {
    const StructureGroup g{GroupKind::SymplecticUnitary, ComplexMatrix::Identity(4, 4)};
    CHECK(dist(project_to_group(ComplexMatrix::Identity(4, 4), g), ComplexMatrix::Identity(4, 4)) <= 1e-15);
    Rng rng(14);
    const ComplexMatrix u = lift(random_group_element<Quaternion>(rng, 2)).mat;
    CHECK(dist(project_to_group(u, g), u) <= 1e-13);
  }
  SUBCASE("small perturbations are polished back") {
    Rng rng(15);
    const ComplexMatrix u = lift(random_group_element<Quaternion>(rng, 3)).mat;
    const ComplexMatrix noisy = u + 1e-6 * random_complex_gaussian(rng, 6);
    const StructureGroup g{GroupKind::SymplecticUnitary, ComplexMatrix::Identity(6, 6)};
    const ComplexMatrix p = project_to_group(noisy, g);
    const ComplexMatrix j = standard_symplectic_form(6);
    CHECK(dist(p.transpose() * j * p, j) <= 1e-11);
    CHECK(dist(p.adjoint() * p, ComplexMatrix::Identity(6, 6)) <= 1e-11);
    CHECK(dist(p, noisy) <= 2 * g.deviation(noisy) + 1e-12);

    const StructureGroup o{GroupKind::Orthogonal, ComplexMatrix::Identity(4, 4)};
    const ComplexMatrix q = lift(random_group_element<double>(rng, 4)).mat;
    const ComplexMatrix po = project_to_group(q + 1e-7 * random_complex_gaussian(rng, 4), o);
    CHECK(po.imag().cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(dist(po.adjoint() * po, ComplexMatrix::Identity(4, 4)) <= 1e-12);
  }
  SUBCASE("too far") {
    const StructureGroup g{GroupKind::Unitary, ComplexMatrix::Identity(2, 2)};
    CHECK(code_of([&] { (void)project_to_group(2.0 * ComplexMatrix::Identity(2, 2), g); }) ==
          ErrorCode::TooFarFromGroup);
  }
}
