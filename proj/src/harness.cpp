#include "wg/harness.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "wg/error.hpp"

namespace wg {

namespace {

constexpr double kPi = std::numbers::pi;

/// nu = kappa grad u . n with the domain-outward normal.
ScalarField conormal_flux(const Rectangle& domain, Eigen::Matrix2d kappa, VectorField gradient) {
  return [=](const Vec2& x) { return (kappa * gradient(x)).dot(rectangle_outward_normal(domain, x)); };
}

Eigen::Matrix2d scaled_identity(double c) { return c * Eigen::Matrix2d::Identity(); }

// p(s) = s^2 (1 - s)^2 and its derivatives.
struct Bump {
  static double p(double s) { return s * s * (1 - s) * (1 - s); }
  static double d1(double s) { return 2 * s - 6 * s * s + 4 * s * s * s; }
  static double d2(double s) { return 2 - 12 * s + 12 * s * s; }
  static double d4(double) { return 24.0; }
};

}  // namespace

Vec2 rectangle_outward_normal(const Rectangle& r, const Vec2& p) {
  const double d[4] = {std::abs(p.x() - r.x0), std::abs(p.x() - r.x1), std::abs(p.y() - r.y0),
                       std::abs(p.y() - r.y1)};
  const Vec2 n[4] = {Vec2(-1, 0), Vec2(1, 0), Vec2(0, -1), Vec2(0, 1)};
  int best = 0;
  for (int i = 1; i < 4; ++i) {
    if (d[i] < d[best]) best = i;
  }
  return n[best];
}

CaseCatalogEntry case_poly_bump() {
  const double c = kTissueKappa;
  const double mu = kTissueMu;
  CaseCatalogEntry e;
  e.name = "poly-bump";
  e.description = "u = x^2(1-x)^2 y^2(1-y)^2 on the unit square, homogeneous boundary data";
  e.domain = Rectangle{};
  auto& p = e.problem;
  p.coefficients = CoefficientSpec::uniform(scaled_identity(c), mu);
  p.exact = ExactSolution{
      [](const Vec2& x) { return Bump::p(x.x()) * Bump::p(x.y()); },
      [](const Vec2& x) {
        return Vec2(Bump::d1(x.x()) * Bump::p(x.y()), Bump::p(x.x()) * Bump::d1(x.y()));
      }};
  p.f = [c, mu](const Vec2& x) {
    const double px = Bump::p(x.x()), py = Bump::p(x.y());
    const double lap = Bump::d2(x.x()) * py + px * Bump::d2(x.y());
    const double bilap = Bump::d4(x.x()) * py + 2 * Bump::d2(x.x()) * Bump::d2(x.y()) + px * Bump::d4(x.y());
    return c * c * bilap - 2 * c * mu * lap + mu * mu * px * py;
  };
  p.xi = [](const Vec2&) { return 0.0; };
  p.nu = [](const Vec2&) { return 0.0; };
  return e;
}

CaseCatalogEntry case_sine() {
  const double c = kTissueKappa;
  const double mu = kTissueMu;
  CaseCatalogEntry e;
  e.name = "sine";
  e.description = "u = sin(pi x) sin(pi y) on the unit square, nonhomogeneous Neumann data";
  e.domain = Rectangle{};
  auto& p = e.problem;
  p.coefficients = CoefficientSpec::uniform(scaled_identity(c), mu);
  const ScalarField u = [](const Vec2& x) { return std::sin(kPi * x.x()) * std::sin(kPi * x.y()); };
  const VectorField grad = [](const Vec2& x) {
    return Vec2(kPi * std::cos(kPi * x.x()) * std::sin(kPi * x.y()),
                kPi * std::sin(kPi * x.x()) * std::cos(kPi * x.y()));
  };
  p.exact = ExactSolution{u, grad};
  const double factor = 4 * std::pow(kPi, 4) * c * c + 4 * kPi * kPi * c * mu + mu * mu;
  p.f = [u, factor](const Vec2& x) { return factor * u(x); };
  p.xi = u;
  p.nu = conormal_flux(e.domain, scaled_identity(c), grad);
  return e;
}

CaseCatalogEntry case_quadratic() {
  Eigen::Matrix2d kappa;
  kappa << 2.0, 0.0, 0.0, 1.0;
  const double mu = 0.3;
  CaseCatalogEntry e;
  e.name = "quadratic";
  e.description = "u = 1 + x - 2y + x^2 + xy - y^2, kappa = diag(2,1), mu = 0.3";
  e.domain = Rectangle{};
  auto& p = e.problem;
  p.coefficients = CoefficientSpec::uniform(kappa, mu);
  const ScalarField u = [](const Vec2& x) {
    const double a = x.x(), b = x.y();
    return 1 + a - 2 * b + a * a + a * b - b * b;
  };
  const VectorField grad = [](const Vec2& x) { return Vec2(1 + 2 * x.x() + x.y(), -2 + x.x() - 2 * x.y()); };
  p.exact = ExactSolution{u, grad};
  // Hessian (2, 1; 1, -2); E u = kappa : H is constant, so E^2 u = 0.
  Eigen::Matrix2d hess;
  hess << 2.0, 1.0, 1.0, -2.0;
  const double eu = (kappa.cwiseProduct(hess)).sum();
  p.f = [u, eu, mu](const Vec2& x) { return -2 * mu * eu + mu * mu * u(x); };
  p.xi = u;
  p.nu = conormal_flux(e.domain, kappa, grad);
  return e;
}

CaseCatalogEntry case_ft_boundary_patch(BoundaryPatchVariant variant, int n) {
  if (n <= 0 || n % 8 != 0) {
    throw ConfigError("n must be divisible by 8 (got " + std::to_string(n) + ")");
  }
  CaseCatalogEntry e;
  e.name = variant == BoundaryPatchVariant::indicator ? "boundary-indicator" : "boundary-dirac";
  e.description = variant == BoundaryPatchVariant::indicator
                      ? "kappa = I on (1/4,3/8)^2, 1e-5 I elsewhere; xi = 1 on the central boundary edges, nu = -xi"
                      : "kappa = I on (1/4,3/8)^2, 1e-5 I elsewhere; xi = 1/|e| on the central boundary edges, nu = -xi";
  e.domain = Rectangle{};
  auto& p = e.problem;
  p.coefficients = CoefficientSpec::uniform(scaled_identity(1e-5), 0.0);
  CoefficientRegion patch;
  patch.bounds = Rectangle{0.25, 0.25, 0.375, 0.375};
  patch.kappa = Eigen::Matrix2d::Identity();
  p.coefficients.regions.push_back(patch);

  const Rectangle domain = e.domain;
  const double edge_len = domain.width() / n;
  const double value = variant == BoundaryPatchVariant::indicator ? 1.0 : 1.0 / edge_len;
  // n is even: the two edges touching the midpoint of each side carry the value.
  p.xi = [domain, edge_len, value](const Vec2& x) {
    const Vec2 nrm = rectangle_outward_normal(domain, x);
    const double s = nrm.x() != 0.0 ? x.y() - domain.y0 : x.x() - domain.x0;
    const double mid = 0.5 * (nrm.x() != 0.0 ? domain.height() : domain.width());
    return std::abs(s - mid) < edge_len ? value : 0.0;
  };
  const ScalarField xi = p.xi;
  p.nu = [xi](const Vec2& x) { return -xi(x); };
  p.f = [](const Vec2&) { return 0.0; };
  return e;
}

CaseCatalogEntry case_ft_gaussian(const Vec2& source) {
  CaseCatalogEntry e;
  e.name = "gaussian-source";
  e.description = "Gaussian point source on (0,50)^2, kappa = I/3.03, mu = 0.01, zero Dirichlet and Neumann data";
  e.domain = Rectangle{0.0, 0.0, 50.0, 50.0};
  auto& p = e.problem;
  p.coefficients = CoefficientSpec::uniform(scaled_identity(kTissueKappa), kTissueMu);
  CoefficientRegion block1;
  block1.shape = CoefficientRegion::Shape::disk;
  block1.center = Vec2(25.0, 15.0);
  block1.radius = 4.0;
  CoefficientRegion block2 = block1;
  block2.center = Vec2(35.0, 20.0);
  block2.radius = 3.0;
  p.coefficients.regions = {block1, block2};

  const double eps = kGaussianWidth;
  const double amplitude = std::sqrt(2.0 * kPi * eps);
  p.f = [source, eps, amplitude](const Vec2& x) {
    return amplitude * std::exp(-(x - source).squaredNorm() / (2.0 * eps));
  };
  p.xi = [](const Vec2&) { return 0.0; };
  p.nu = [](const Vec2&) { return 0.0; };
  return e;
}

const std::vector<CatalogItem>& case_catalog() {
  static const std::vector<CatalogItem> items = {
      {"poly-bump", case_poly_bump().description},
      {"sine", case_sine().description},
      {"quadratic", case_quadratic().description},
  };
  return items;
}

const std::vector<CatalogItem>& scenario_catalog() {
  static const std::vector<CatalogItem> items = {
      {"boundary-indicator", case_ft_boundary_patch(BoundaryPatchVariant::indicator, 8).description},
      {"boundary-dirac", case_ft_boundary_patch(BoundaryPatchVariant::dirac, 8).description},
      {"gaussian-source", case_ft_gaussian(Vec2::Zero()).description + " (requires --source x,y)"},
  };
  return items;
}

CaseCatalogEntry make_case(const std::string& name) {
  if (name == "poly-bump") return case_poly_bump();
  if (name == "sine") return case_sine();
  if (name == "quadratic") return case_quadratic();
  throw ConfigError("unknown case '" + name + "'");
}

CaseCatalogEntry make_scenario(const std::string& name, int n, const std::optional<Vec2>& source) {
  if (name == "boundary-indicator") return case_ft_boundary_patch(BoundaryPatchVariant::indicator, n);
  if (name == "boundary-dirac") return case_ft_boundary_patch(BoundaryPatchVariant::dirac, n);
  if (name == "gaussian-source") {
    if (!source) throw ConfigError("scenario gaussian-source requires a source point");
    return case_ft_gaussian(*source);
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

Solution solve_case(const CaseCatalogEntry& entry, int n, const SolverConfig& solver, const AssemblyOptions& options) {
  Mesh mesh = build_structured_mesh(entry.domain, n);
  CoefficientField coefficients(mesh, entry.problem.coefficients);
  const AssembledSystem system = assemble(mesh, coefficients, entry.problem, options);
  SolveResult result = solve_spd(system, solver);
  WeakFunction uh = system.expand(result.x);
  return Solution{std::move(mesh), std::move(coefficients), std::move(uh), std::move(result.report)};
}

ConvergenceTable run_convergence(const CaseCatalogEntry& entry, std::span<const int> levels,
                                 const SolverConfig& solver, const AssemblyOptions& options) {
  if (!entry.problem.exact) throw ConfigError("case '" + entry.name + "' has no exact solution");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] <= levels[i - 1]) throw ConfigError("convergence levels must be strictly increasing");
  }
  ConvergenceTable table;
  for (const int n : levels) {
    try {
      const Solution s = solve_case(entry, n, solver, options);
      table.rows.push_back(error_report(s.mesh, s.coefficients, *entry.problem.exact, s.uh, options));
    } catch (const SolverError& err) {
      throw SolverError(err.kind(), "level n=" + std::to_string(n) + ": " + err.what(), err.residual_history());
    }
  }
  table.orders = convergence_orders(table.rows);
  return table;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

void write_convergence_csv(const ConvergenceTable& table, std::ostream& out) {
  auto order = [](const std::optional<double>& o) { return o ? format_number(*o) : std::string("exact"); };
  out << "n,h,l2_e0,l2_order,tbar,tbar_order,eb,eb_order,eg,eg_order\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const ErrorReport& r = table.rows[i];
    const ConvergenceOrders* o = i > 0 ? &table.orders[i - 1] : nullptr;
    out << r.n << ',' << format_number(r.h) << ',' << format_number(r.l2_e0) << ','
        << (o ? order(o->l2_e0) : "") << ',' << format_number(r.tbar) << ',' << (o ? order(o->tbar) : "") << ','
        << format_number(r.eb_edge) << ',' << (o ? order(o->eb_edge) : "") << ',' << format_number(r.eg_edge)
        << ',' << (o ? order(o->eg_edge) : "") << '\n';
  }
}

double evaluate_solution(const Mesh& mesh, const WeakFunction& uh, const Vec2& p) {
  const double tol = 1e-12 * mesh.mesh_size();
  if (!mesh.domain().contains(p, tol)) throw std::out_of_range("sample point outside the domain");
  const int t = mesh.locate(p, 1e-12);
  if (t < 0) throw std::out_of_range("sample point not inside any element");
  const ElementGeometry g = element_geometry(mesh, t);
  return evaluate_interior(g, uh.local(t).interior, p);
}

std::vector<FieldSample> sample_field(const Mesh& mesh, const WeakFunction& uh, int m) {
  if (m < 2) throw std::invalid_argument("sample_field: grid size must be >= 2");
  const Rectangle& r = mesh.domain();
  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(m) * m);
  for (int j = 0; j < m; ++j) {
    const double y = (j == m - 1) ? r.y1 : r.y0 + r.height() * j / (m - 1);
    for (int i = 0; i < m; ++i) {
      const double x = (i == m - 1) ? r.x1 : r.x0 + r.width() * i / (m - 1);
      out.push_back({x, y, evaluate_solution(mesh, uh, Vec2(x, y))});
    }
  }
  return out;
}

void write_field_csv(std::span<const FieldSample> samples, std::ostream& out) {
  out << "x,y,u0\n";
  for (const auto& s : samples) {
    out << format_number(s.x) << ',' << format_number(s.y) << ',' << format_number(s.u0) << '\n';
  }
}

}  // namespace wg
