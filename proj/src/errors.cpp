#include "wg/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

ErrorReport error_norms(const Mesh& mesh, const CoefficientField& coefficients, const WeakFunction& e,
                        const AssemblyOptions& options) {
  ErrorReport r;
  r.n = mesh.subdivisions();
  r.h = mesh.mesh_size();

  double l2 = 0.0;
  double eb = 0.0;
  double eg = 0.0;
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const LocalOperators ops(element_geometry(mesh, t, options.scale));
    const LocalWeakFunction v = e.local(t);
    l2 += v.interior.dot(ops.mass() * v.interior);
    const double h = ops.geometry().size;
    for (int le = 0; le < 3; ++le) {
      eb += h * v.trace[le].dot(ops.edge_mass(le) * v.trace[le]);
      eg += h * v.flux[le].dot(ops.edge_mass(le) * v.flux[le]);
    }
  }
  r.l2_e0 = std::sqrt(std::max(l2, 0.0));
  r.eb_edge = std::sqrt(std::max(eb, 0.0));
  r.eg_edge = std::sqrt(std::max(eg, 0.0));
  r.tbar = triple_bar_norm(mesh, coefficients, e, options);
  return r;
}

ErrorReport error_report(const Mesh& mesh, const CoefficientField& coefficients, const ExactSolution& exact,
                         const WeakFunction& uh, const AssemblyOptions& options) {
  WeakFunction e = project_Qh(mesh, exact, coefficients);
  e.coefficients() -= uh.coefficients();
  // Boundary data are projected exactly, so e_h lies in V_h^0.
  const auto& fixed = e.dofs().boundary_mask();
  for (int i = 0; i < e.dofs().size(); ++i) {
    if (fixed[i]) e.coefficients()[i] = 0.0;
  }
  return error_norms(mesh, coefficients, e, options);
}

ErrorReport error_report(const Mesh& mesh, const ProblemSpec& problem, const WeakFunction& uh,
                         const AssemblyOptions& options) {
  if (!problem.exact) throw std::invalid_argument("error_report: problem has no exact solution");
  return error_report(mesh, CoefficientField(mesh, problem.coefficients), *problem.exact, uh, options);
}

std::optional<double> convergence_order(double coarse, double fine, double h_ratio) {
  if (fine == 0.0) return std::nullopt;
  return std::log(coarse / fine) / std::log(h_ratio);
}

std::vector<ConvergenceOrders> convergence_orders(std::span<const ErrorReport> reports) {
  std::vector<ConvergenceOrders> out;
  for (std::size_t i = 0; i + 1 < reports.size(); ++i) {
    const ErrorReport& a = reports[i];
    const ErrorReport& b = reports[i + 1];
    if (!(a.h > b.h)) throw std::invalid_argument("convergence_orders: reports must have decreasing h");
    const double ratio = a.h / b.h;
    out.push_back({convergence_order(a.l2_e0, b.l2_e0, ratio), convergence_order(a.tbar, b.tbar, ratio),
                   convergence_order(a.eb_edge, b.eb_edge, ratio), convergence_order(a.eg_edge, b.eg_edge, ratio)});
  }
  return out;
}

double fitted_order(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2) throw std::invalid_argument("fitted_order: need >= 2 matching samples");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace wg
