#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "wg/error.hpp"
#include "wg/harness.hpp"

namespace wg {
namespace {

struct Manufactured {
  CaseCatalogEntry entry;
  test::LField u;
  long double kxx, kyy, mu;
};

std::vector<Manufactured> manufactured() {
  return {
      {case_poly_bump(), test::bump_solution, kTissueKappa, kTissueKappa, kTissueMu},
      {case_sine(), test::sine_solution, kTissueKappa, kTissueKappa, kTissueMu},
      {case_quadratic(), test::quadratic_solution, 2.0L, 1.0L, 0.3L},
  };
}

TEST(ManufacturedCases, SourceMatchesFiniteDifferenceOracle) {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (const auto& m : manufactured()) {
    for (int i = 0; i < 20; ++i) {
      const Vec2 p(u(rng), u(rng));
      const double f = m.entry.problem.f(p);
      const long double ref = test::fd_fourth_order_operator(m.u, m.kxx, m.kyy, m.mu, p.x(), p.y());
      EXPECT_NEAR(f, static_cast<double>(ref), 1e-5 * std::max(std::abs(f), 1e-2)) << m.entry.name;
      EXPECT_NEAR(m.entry.problem.exact->value(p), static_cast<double>(m.u(p.x(), p.y())), 1e-15);
    }
  }
}

TEST(ManufacturedCases, GradientMatchesCentralDifferences) {
  for (const auto& m : manufactured()) {
    const Vec2 p(0.37, 0.61);
    const double h = 1e-6;
    const auto& ex = *m.entry.problem.exact;
    const Vec2 g = ex.gradient(p);
    EXPECT_NEAR(g.x(), (ex.value(p + Vec2(h, 0)) - ex.value(p - Vec2(h, 0))) / (2 * h), 1e-8);
    EXPECT_NEAR(g.y(), (ex.value(p + Vec2(0, h)) - ex.value(p - Vec2(0, h))) / (2 * h), 1e-8);
  }
}

TEST(ManufacturedCases, PointValuesAndBoundaryData) {
  const auto bump = case_poly_bump();
  EXPECT_DOUBLE_EQ(bump.problem.exact->value(Vec2(0.5, 0.5)), 0.00390625);
  for (double s : {0.0, 0.3, 1.0}) {
    EXPECT_EQ(bump.problem.xi(Vec2(s, 0.0)), 0.0);
    EXPECT_EQ(bump.problem.nu(Vec2(1.0, s)), 0.0);
  }
  const auto sine = case_sine();
  EXPECT_NEAR(sine.problem.exact->value(Vec2(0.5, 0.5)), 1.0, 1e-15);
  EXPECT_NEAR(sine.problem.nu(Vec2(0.5, 0.0)), -kTissueKappa * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sine.problem.nu(Vec2(1.0, 0.5)), -kTissueKappa * std::numbers::pi, 1e-14);
  const auto q = case_quadratic();
  // kappa grad u . n on the right side: 2 (1 + 2x + y).
  EXPECT_NEAR(q.problem.nu(Vec2(1.0, 0.25)), 2.0 * (1 + 2 + 0.25), 1e-14);
}

TEST(Catalog, NamesResolve) {
  for (const auto& c : case_catalog()) EXPECT_EQ(make_case(c.name).name, c.name);
  EXPECT_THROW(make_case("nope"), ConfigError);
  EXPECT_THROW(make_scenario("nope", 8), ConfigError);
  EXPECT_THROW(make_scenario("gaussian-source", 8), ConfigError);
  EXPECT_EQ(make_scenario("boundary-indicator", 8).name, "boundary-indicator");
  EXPECT_EQ(scenario_catalog().size(), 3u);
}

int count_patch_edges(const CaseCatalogEntry& e, int n, double value) {
  const Mesh mesh = build_structured_mesh(e.domain, n);
  int count = 0;
  for (const auto& edge : mesh.edges()) {
    if (!edge.boundary) continue;
    const double xi = e.problem.xi(edge.midpoint);
    if (xi != 0.0) {
      EXPECT_NEAR(xi, value, 1e-12);
      EXPECT_EQ(e.problem.nu(edge.midpoint), -xi);
      ++count;
    }
  }
  return count;
}

TEST(BoundaryPatch, CentralEdgesCarryData) {
  EXPECT_EQ(count_patch_edges(case_ft_boundary_patch(BoundaryPatchVariant::indicator, 8), 8, 1.0), 8);
  EXPECT_EQ(count_patch_edges(case_ft_boundary_patch(BoundaryPatchVariant::dirac, 64), 64, 64.0), 8);
  const auto e = case_ft_boundary_patch(BoundaryPatchVariant::indicator, 16);
  EXPECT_EQ(e.problem.f(Vec2(0.3, 0.3)), 0.0);
  const CoefficientField c(build_structured_mesh(e.domain, 16), e.problem.coefficients);
  const Mesh mesh = build_structured_mesh(e.domain, 16);
  EXPECT_DOUBLE_EQ(c.kappa(mesh.locate(Vec2(0.3, 0.3)))(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(c.kappa(mesh.locate(Vec2(0.7, 0.7)))(0, 0), 1e-5);
  EXPECT_DOUBLE_EQ(c.mu(0), 0.0);
}

TEST(BoundaryPatch, RejectsMeshesNotDivisibleByEight) {
  EXPECT_THROW(case_ft_boundary_patch(BoundaryPatchVariant::indicator, 10), ConfigError);
  EXPECT_THROW(case_ft_boundary_patch(BoundaryPatchVariant::dirac, 0), ConfigError);
}

TEST(GaussianSource, PeakAndDecay) {
  const Vec2 src(20.0, 30.0);
  const auto e = case_ft_gaussian(src);
  EXPECT_NEAR(e.problem.f(src), std::sqrt(2.0 * std::numbers::pi * kGaussianWidth), 1e-12);
  EXPECT_NEAR(e.problem.f(src), 3.1333, 1e-4);
  EXPECT_LT(e.problem.f(src + Vec2(15.0, 0.0)), 1e-20);
  EXPECT_EQ(e.problem.xi(Vec2(0, 10)), 0.0);
  EXPECT_EQ(e.problem.nu(Vec2(50, 10)), 0.0);
  EXPECT_DOUBLE_EQ(e.domain.x1, 50.0);
}

TEST(RectangleNormal, NearestSide) {
  const Rectangle r{};
  EXPECT_EQ(rectangle_outward_normal(r, Vec2(0.5, 0.0)), Vec2(0, -1));
  EXPECT_EQ(rectangle_outward_normal(r, Vec2(1.0, 0.4)), Vec2(1, 0));
  EXPECT_EQ(rectangle_outward_normal(r, Vec2(0.0, 0.4)), Vec2(-1, 0));
  EXPECT_EQ(rectangle_outward_normal(r, Vec2(0.6, 1.0)), Vec2(0, 1));
}

TEST(Sampling, ConstantAndSineFields) {
  const Mesh mesh = build_structured_mesh(Rectangle{}, 4);
  WeakFunction w{DofMap(mesh)};
  for (int t = 0; t < mesh.num_elements(); ++t) w.coefficients()[w.dofs().interior_offset(t)] = 2.5;
  const auto s = sample_field(mesh, w, 5);
  ASSERT_EQ(s.size(), 25u);
  EXPECT_EQ(s.front().x, 0.0);
  EXPECT_EQ(s.back().y, 1.0);
  for (const auto& p : s) EXPECT_NEAR(p.u0, 2.5, 1e-14);
  EXPECT_THROW(sample_field(mesh, w, 1), std::invalid_argument);
  EXPECT_THROW(evaluate_solution(mesh, w, Vec2(1.5, 0.5)), std::out_of_range);

  const Solution sol = solve_case(case_sine(), 64);
  EXPECT_NEAR(evaluate_solution(sol.mesh, sol.uh, Vec2(0.5, 0.5)), 1.0, 1e-2);
}

TEST(Symmetry, DiracPatchSymmetricUnderDiagonalReflection) {
  // Reflection across y = x maps the mesh, coefficients and data onto themselves.
  const auto e = case_ft_boundary_patch(BoundaryPatchVariant::dirac, 16);
  CaseCatalogEntry uniform = e;
  uniform.problem.coefficients = CoefficientSpec::uniform(Eigen::Matrix2d::Identity(), 0.1);
  const Solution s = solve_case(uniform, 16);
  double max_u = 0.0;
  for (const auto& p : sample_field(s.mesh, s.uh, 9)) {
    const double mirror = evaluate_solution(s.mesh, s.uh, Vec2(p.y, p.x));
    max_u = std::max(max_u, std::abs(p.u0));
    EXPECT_NEAR(p.u0, mirror, 1e-8 * (1 + std::abs(p.u0)));
  }
  EXPECT_GT(max_u, 0.0);
}

TEST(Convergence, TableAndCsv) {
  const ConvergenceTable t = run_convergence(case_quadratic(), std::vector<int>{2, 4});
  ASSERT_EQ(t.rows.size(), 2u);
  ASSERT_EQ(t.orders.size(), 1u);
  EXPECT_LT(t.rows[1].tbar, 1e-8);
  std::ostringstream os;
  write_convergence_csv(t, os);
  std::istringstream in(os.str());
  std::string header, row1;
  std::getline(in, header);
  std::getline(in, row1);
  EXPECT_EQ(header, "n,h,l2_e0,l2_order,tbar,tbar_order,eb,eb_order,eg,eg_order");
  EXPECT_EQ(row1.rfind("2,", 0), 0u);
  EXPECT_NE(row1.find(",,"), std::string::npos);

  ConvergenceTable exact;
  exact.rows = {ErrorReport{1, 1.0, 1.0, 1.0, 1.0, 1.0}, ErrorReport{2, 0.5, 0.0, 0.0, 0.0, 0.0}};
  exact.orders = convergence_orders(exact.rows);
  std::ostringstream ex;
  write_convergence_csv(exact, ex);
  EXPECT_NE(ex.str().find("exact"), std::string::npos);

  EXPECT_THROW(run_convergence(case_sine(), std::vector<int>{4, 2}), std::invalid_argument);
}

TEST(Formatting, SixSignificantDigits) {
  EXPECT_EQ(format_number(0.002447), "2.44700e-03");
  EXPECT_EQ(format_number(0.0), "0.00000e+00");
}

}  // namespace
}  // namespace wg
