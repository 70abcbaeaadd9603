#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "wg/assembly.hpp"
#include "wg/error.hpp"
#include "wg/harness.hpp"

namespace wg {
namespace {

const Triangle kUnitRight{{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}};

// Lifted constant c: v0 = c, v_b = c, v_g = 0.
LocalVector lifted_constant(double c) {
  LocalWeakFunction v;
  v.interior[0] = c;
  for (int i = 0; i < 3; ++i) v.trace[i] = Eigen::Vector2d(c, 0.0);
  return v.to_vector();
}

TEST(LocalSystem, ConstantsAndMassScaling) {
  const LocalOperators ops(element_geometry(kUnitRight, {1, -1, 1}));
  const double c = 1.3;
  const LocalVector v = lifted_constant(c);
  const LocalMatrix a0 = local_system(ops, Eigen::Matrix2d::Identity(), 0.0);
  EXPECT_LE((a0 * v).norm(), 1e-12);
  const LocalMatrix a1 = local_system(ops, Eigen::Matrix2d::Identity(), 1.0);
  EXPECT_NEAR(v.dot(a1 * v), c * c * 0.5, 1e-12);

  // The mu-dependence is 2 mu G + mu^2 M with M the P2 mass on v0.
  const LocalMatrix a2 = local_system(ops, Eigen::Matrix2d::Identity(), 2.0);
  const LocalMatrix m = 0.5 * (a2 - 2.0 * a1 + a0);
  EXPECT_LE((m.topLeftCorner<6, 6>() - ops.mass()).norm(), 1e-12);
  EXPECT_LE(m.bottomRows<12>().norm(), 1e-12);
}

TEST(LocalSystem, SymmetricPositiveSemidefinite) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::Matrix2d k;
  k << 2.0, 0.3, 0.3, 0.7;
  for (int trial = 0; trial < 20; ++trial) {
    Triangle t{{Vec2(u(rng), u(rng)), Vec2(u(rng), u(rng)), Vec2(u(rng), u(rng))}};
    if (t.signed_area() < 0) std::swap(t.v[1], t.v[2]);
    if (t.area() < 0.05 * t.diameter() * t.diameter()) continue;
    for (auto trace : {StabilizerTrace::projected, StabilizerTrace::full}) {
      const LocalOperators ops(element_geometry(t, {1, -1, -1}, 0.5));
      const LocalMatrix a = local_system(ops, k, 0.25, {trace, StabilizerScale::mesh_size});
      EXPECT_LE((a - a.transpose()).norm(), 1e-13 * a.norm());
      Eigen::SelfAdjointEigenSolver<LocalMatrix> es(a);
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10 * es.eigenvalues().maxCoeff());
    }
  }
}

TEST(LocalLoad, ConstantSourceMoments) {
  const LocalOperators ops(element_geometry(kUnitRight));
  const auto b = local_load(ops, [](const Vec2&) { return 2.0; });
  EXPECT_NEAR(b[0], 1.0, 1e-15);
}

TEST(Assembly, OneSquareHasSixteenFreeDofs) {
  const Mesh mesh = build_structured_mesh(Rectangle{}, 1);
  const AssembledSystem s = assemble(mesh, case_poly_bump().problem);
  EXPECT_EQ(s.dofs.size(), 32);
  EXPECT_EQ(s.num_free(), 16);
  EXPECT_EQ(s.matrix.rows(), 16);
}

TEST(Assembly, ZeroDataGivesZeroRightHandSide) {
  const Mesh mesh = build_structured_mesh(Rectangle{}, 3);
  ProblemSpec p;
  p.f = [](const Vec2&) { return 0.0; };
  p.xi = p.f;
  p.nu = p.f;
  p.coefficients = CoefficientSpec::uniform(Eigen::Matrix2d::Identity(), 0.5);
  const AssembledSystem s = assemble(mesh, p);
  EXPECT_EQ(s.rhs.norm(), 0.0);
  EXPECT_EQ(s.boundary.norm(), 0.0);
}

TEST(Assembly, SymmetricPositiveDefiniteOnSmallMeshes) {
  for (int n : {1, 2}) {
    for (const auto& entry : {case_sine(), case_quadratic(), case_poly_bump()}) {
      const Mesh mesh = build_structured_mesh(entry.domain, n);
      const AssembledSystem s = assemble(mesh, entry.problem);
      const Eigen::MatrixXd a(s.matrix);
      EXPECT_LE((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-13 * a.cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
      EXPECT_GT(es.eigenvalues().minCoeff(), 0.0) << entry.name << " n=" << n;
    }
  }
}

TEST(Assembly, ProjectedAndFullStabilizersDiffer) {
  const Mesh mesh = build_structured_mesh(Rectangle{}, 2);
  const CoefficientField coeffs(mesh, CoefficientSpec{});
  const SparseMatrix p = assemble_operator(mesh, coeffs, {StabilizerTrace::projected, StabilizerScale::mesh_size});
  const SparseMatrix f = assemble_operator(mesh, coeffs, {StabilizerTrace::full, StabilizerScale::mesh_size});
  EXPECT_GT((Eigen::MatrixXd(p) - Eigen::MatrixXd(f)).norm(), 1e-3);
}

TEST(Assembly, TripleBarNormMatchesQuadraticForm) {
  const Mesh mesh = build_structured_mesh(Rectangle{}, 3);
  const CoefficientField coeffs(mesh, case_sine().problem.coefficients);
  std::mt19937 rng(4);
  std::normal_distribution<double> n01;
  Eigen::VectorXd c(DofMap(mesh).size());
  for (int i = 0; i < c.size(); ++i) c[i] = n01(rng);
  const WeakFunction w(DofMap(mesh), c);
  const SparseMatrix a = assemble_operator(mesh, coeffs);
  const double norm = triple_bar_norm(mesh, coeffs, w);
  EXPECT_NEAR(norm * norm, c.dot(a * c), 1e-9 * norm * norm);
  EXPECT_EQ(triple_bar_norm(mesh, coeffs, WeakFunction{DofMap(mesh)}), 0.0);
}

TEST(Assembly, EliminationMovesBoundaryColumnsToRhs) {
  const Mesh mesh = build_structured_mesh(Rectangle{}, 2);
  const auto entry = case_sine();
  const CoefficientField coeffs(mesh, entry.problem.coefficients);
  const AssembledSystem s = assemble(mesh, coeffs, entry.problem);
  const SparseMatrix full = assemble_operator(mesh, coeffs);
  // For x_free = 0 the reduced residual equals the full residual on free rows.
  const Eigen::VectorXd r_full = -(full * s.boundary);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(s.dofs.size());
  for (int t = 0; t < mesh.num_elements(); ++t) {
    load.segment<kInteriorDofs>(s.dofs.interior_offset(t)) =
        local_load(LocalOperators(element_geometry(mesh, t)), entry.problem.f);
  }
  for (int i = 0; i < s.num_free(); ++i) {
    EXPECT_NEAR(s.rhs[i], load[s.free_dofs[i]] + r_full[s.free_dofs[i]], 1e-10 * (1 + std::abs(s.rhs[i])));
  }
}

TEST(Assembly, NonFiniteBoundaryDataIsReported) {
  const Mesh mesh = build_structured_mesh(Rectangle{}, 2);
  EXPECT_THROW(boundary_values(
                   mesh, [](const Vec2&) { return std::nan(""); }, [](const Vec2&) { return 0.0; }),
               NumericalError);
}

TEST(Coefficients, ValidationAndRegions) {
  Eigen::Matrix2d bad;
  bad << 1, 2, 2, 1;
  EXPECT_THROW(validate_kappa(bad), ConfigError);
  Eigen::Matrix2d skew;
  skew << 1, 0.5, 0, 1;
  EXPECT_THROW(validate_kappa(skew), ConfigError);
  EXPECT_THROW(CoefficientSpec::uniform(Eigen::Matrix2d::Identity(), -1.0).validate(), ConfigError);

  const Mesh mesh = build_structured_mesh(Rectangle{}, 8);
  CoefficientSpec spec = CoefficientSpec::uniform(Eigen::Matrix2d::Identity(), 0.1);
  CoefficientRegion r;
  r.bounds = Rectangle{0, 0, 0.5, 0.5};
  r.mu = 2.0;
  CoefficientRegion d;
  d.shape = CoefficientRegion::Shape::disk;
  d.center = Vec2(0.25, 0.25);
  d.radius = 0.1;
  d.mu = 3.0;
  spec.regions = {r, d};
  const CoefficientField f(mesh, spec);
  EXPECT_DOUBLE_EQ(f.mu(mesh.locate(Vec2(0.26, 0.24))), 3.0);
  EXPECT_DOUBLE_EQ(f.mu(mesh.locate(Vec2(0.05, 0.4))), 2.0);
  EXPECT_DOUBLE_EQ(f.mu(mesh.locate(Vec2(0.9, 0.9))), 0.1);
}

}  // namespace
}  // namespace wg
