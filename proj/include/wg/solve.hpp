#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wg/assembly.hpp"

namespace wg {

struct SolverConfig {
  enum class Method { cholesky, conjugate_gradient };
  enum class Preconditioner { none, diagonal };

  Method method = Method::cholesky;
  double tolerance = 1e-10;  // relative residual ||Ax - b|| / ||b||
  int max_iterations = 0;    // 0: 20 x system size
  Preconditioner preconditioner = Preconditioner::diagonal;

  /// Throws ConfigError unless 0 < tolerance < 1 and max_iterations >= 0.
  void validate() const;
};

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
  /// ||r||_inf / (||A||_inf ||x||_inf + ||b||_inf); set by the direct path.
  double backward_error = 0.0;
  std::vector<double> residual_history;  // per CG iteration or refinement step
};

struct SolveResult {
  Eigen::VectorXd x;
  SolveReport report;
};

/// Throws SolverError (indefinite / not_converged).
SolveResult solve_spd(const SparseMatrix& a, const Eigen::VectorXd& b, const SolverConfig& config = {});
SolveResult solve_spd(const AssembledSystem& system, const SolverConfig& config = {});

}  // namespace wg
