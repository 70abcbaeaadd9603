#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wg/assembly.hpp"
#include "wg/errors.hpp"
#include "wg/mesh.hpp"
#include "wg/solve.hpp"

namespace wg {

/// kappa = I / (3 (1 + 0.01)) and mu = 0.01, used by the manufactured cases and
/// the Gaussian-source scenario.
inline constexpr double kTissueKappa = 1.0 / (3.0 * 1.01);
inline constexpr double kTissueMu = 0.01;

struct CaseCatalogEntry {
  std::string name;
  std::string description;
  Rectangle domain;
  ProblemSpec problem;
};

/// u = x^2 (1-x)^2 y^2 (1-y)^2 on the unit square, homogeneous data.
CaseCatalogEntry case_poly_bump();

/// u = sin(pi x) sin(pi y) on the unit square; nonzero Neumann data.
CaseCatalogEntry case_sine();

/// u = 1 + x - 2y + x^2 + xy - y^2, kappa = diag(2, 1), mu = 0.3.
CaseCatalogEntry case_quadratic();

enum class BoundaryPatchVariant { indicator, dirac };

/// kappa = I on (1/4, 3/8)^2 and 1e-5 I elsewhere, mu = 0, f = 0; xi is 1
/// (indicator) or 1/|e| (dirac) on the two central edges of each side,
/// nu = -xi. Throws ConfigError unless n is a positive multiple of 8.
CaseCatalogEntry case_ft_boundary_patch(BoundaryPatchVariant variant, int n);

/// Gaussian point source on (0, 50)^2 with zero Dirichlet and Neumann data.
/// Two disk regions, (25,15) r=4 and (35,20) r=3, are present but carry the
/// uniform coefficients unless edited.
CaseCatalogEntry case_ft_gaussian(const Vec2& source);

inline constexpr double kGaussianWidth = 100.0 / 64.0;  // epsilon

struct CatalogItem {
  std::string name;
  std::string description;
};

/// Manufactured cases usable by `convergence` and `solve`.
const std::vector<CatalogItem>& case_catalog();
/// Scenarios usable by `ft-demo`.
const std::vector<CatalogItem>& scenario_catalog();

/// Throws ConfigError for an unknown name.
CaseCatalogEntry make_case(const std::string& name);
/// `source` is required by gaussian-source; `n` is checked by the boundary-patch scenarios.
CaseCatalogEntry make_scenario(const std::string& name, int n, const std::optional<Vec2>& source = std::nullopt);

/// Domain-outward unit normal at a point on the rectangle boundary (nearest side).
Vec2 rectangle_outward_normal(const Rectangle& r, const Vec2& p);

struct Solution {
  Mesh mesh;
  CoefficientField coefficients;
  WeakFunction uh;
  SolveReport report;
};

Solution solve_case(const CaseCatalogEntry& entry, int n, const SolverConfig& solver = {},
                    const AssemblyOptions& options = {});

struct ConvergenceTable {
  std::vector<ErrorReport> rows;
  std::vector<ConvergenceOrders> orders;  // orders[i] pairs rows[i] and rows[i+1]
};

/// Levels must be strictly increasing. Solver failures are rethrown with the level.
ConvergenceTable run_convergence(const CaseCatalogEntry& entry, std::span<const int> levels,
                                 const SolverConfig& solver = {}, const AssemblyOptions& options = {});

/// Header n,h,l2_e0,l2_order,tbar,tbar_order,eb,eb_order,eg,eg_order.
void write_convergence_csv(const ConvergenceTable& table, std::ostream& out);

struct FieldSample {
  double x = 0.0;
  double y = 0.0;
  double u0 = 0.0;
};

/// u0 at a point; throws std::out_of_range outside the mesh.
double evaluate_solution(const Mesh& mesh, const WeakFunction& uh, const Vec2& p);

/// m x m grid including the domain boundary, row-major in y then x.
std::vector<FieldSample> sample_field(const Mesh& mesh, const WeakFunction& uh, int m);

/// Header x,y,u0.
void write_field_csv(std::span<const FieldSample> samples, std::ostream& out);

/// Six significant digits in scientific notation.
std::string format_number(double v);

}  // namespace wg
