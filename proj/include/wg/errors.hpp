#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wg/assembly.hpp"

namespace wg {

/// Norms of e_h = Q_h u - u_h.
struct ErrorReport {
  int n = 0;
  double h = 0.0;
  double l2_e0 = 0.0;    // ||Q0 u - u0||
  double tbar = 0.0;     // |||e_h|||
  double eb_edge = 0.0;  // (sum_T h_T ||e_b||^2_{dT})^1/2
  double eg_edge = 0.0;  // (sum_T h_T ||e_g||^2_{dT})^1/2
};

/// Norms of an arbitrary weak function treated as an error e_h.
ErrorReport error_norms(const Mesh& mesh, const CoefficientField& coefficients, const WeakFunction& e,
                        const AssemblyOptions& options = {});

ErrorReport error_report(const Mesh& mesh, const CoefficientField& coefficients, const ExactSolution& exact,
                         const WeakFunction& uh, const AssemblyOptions& options = {});

/// Throws std::invalid_argument when the problem has no exact solution.
ErrorReport error_report(const Mesh& mesh, const ProblemSpec& problem, const WeakFunction& uh,
                         const AssemblyOptions& options = {});

/// log(coarse/fine) / log(h_coarse/h_fine); nullopt when the fine error is
/// zero (reported as "exact").
std::optional<double> convergence_order(double coarse, double fine, double h_ratio = 2.0);

struct ConvergenceOrders {
  std::optional<double> l2_e0;
  std::optional<double> tbar;
  std::optional<double> eb_edge;
  std::optional<double> eg_edge;
};

/// Orders between consecutive reports; reports must have strictly decreasing h.
std::vector<ConvergenceOrders> convergence_orders(std::span<const ErrorReport> reports);

/// Least-squares slope of log(err) against log(h).
double fitted_order(std::span<const double> h, std::span<const double> err);

}  // namespace wg
