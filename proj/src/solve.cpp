#include "wg/solve.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <Eigen/SparseCholesky>

#include "wg/error.hpp"

namespace wg {

namespace {

constexpr double kBackwardErrorFloor = 1e-14;

std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double inf_norm(const SparseMatrix& a) {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(a.rows());
  for (int k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) rows[it.row()] += std::abs(it.value());
  }
  return rows.size() > 0 ? rows.maxCoeff() : 0.0;
}

double relative_residual(const SparseMatrix& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const double nb = b.norm();
  const double nr = (b - a * x).norm();
  return nb > 0.0 ? nr / nb : nr;
}

SolveResult solve_cholesky(const SparseMatrix& a, const Eigen::VectorXd& b, const SolverConfig& config) {
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt(a);
  if (llt.info() != Eigen::Success) {
    throw SolverError(SolverError::Kind::indefinite, "cholesky factorization failed: matrix is not positive definite");
  }
  SolveResult out;
  out.x = llt.solve(b);
  out.report.iterations = 1;
  out.report.relative_residual = relative_residual(a, out.x, b);
  out.report.residual_history.push_back(out.report.relative_residual);
  // Iterative refinement while roundoff keeps the residual above tolerance.
  constexpr int kMaxRefinements = 8;
  for (int k = 0; k < kMaxRefinements && out.report.relative_residual > config.tolerance; ++k) {
    out.x += llt.solve(b - a * out.x);
    out.report.iterations += 1;
    out.report.relative_residual = relative_residual(a, out.x, b);
    out.report.residual_history.push_back(out.report.relative_residual);
  }
  const Eigen::VectorXd r = b - a * out.x;
  out.report.backward_error =
      r.lpNorm<Eigen::Infinity>() / (inf_norm(a) * out.x.lpNorm<Eigen::Infinity>() + b.lpNorm<Eigen::Infinity>());
  // A residual above tolerance is accepted only at the roundoff floor of a
  // backward-stable solve; the h^-4 conditioning puts that near 1e-10 at n = 64.
  if (!(out.report.relative_residual <= config.tolerance) && !(out.report.backward_error <= kBackwardErrorFloor)) {
    throw SolverError(SolverError::Kind::not_converged,
                      "cholesky solve residual " + scientific(out.report.relative_residual) + " above tolerance",
                      out.report.residual_history);
  }
  return out;
}

SolveResult solve_cg(const SparseMatrix& a, const Eigen::VectorXd& b, const SolverConfig& config) {
  const Eigen::Index n = b.size();
  const int max_iter = config.max_iterations > 0 ? config.max_iterations : static_cast<int>(20 * n);

  Eigen::VectorXd inv_diag = Eigen::VectorXd::Ones(n);
  if (config.preconditioner == SolverConfig::Preconditioner::diagonal) {
    const Eigen::VectorXd d = a.diagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(d[i] > 0.0)) {
        throw SolverError(SolverError::Kind::indefinite, "nonpositive diagonal entry " + std::to_string(i));
      }
      inv_diag[i] = 1.0 / d[i];
    }
  }

  SolveResult out;
  out.x = Eigen::VectorXd::Zero(n);
  const double nb = b.norm();
  if (nb == 0.0) return out;

  Eigen::VectorXd r = b;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  auto& history = out.report.residual_history;
  history.push_back(1.0);
  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::VectorXd ap = a * p;
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) {
      throw SolverError(SolverError::Kind::indefinite, "conjugate gradient met a nonpositive curvature direction",
                        history);
    }
    const double alpha = rz / pap;
    out.x += alpha * p;
    r -= alpha * ap;
    const double rel = r.norm() / nb;
    history.push_back(rel);
    out.report.iterations = it;
    if (rel <= config.tolerance) {
      out.report.relative_residual = relative_residual(a, out.x, b);
      return out;
    }
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  throw SolverError(SolverError::Kind::not_converged,
                    "conjugate gradient did not converge in " + std::to_string(max_iter) + " iterations", history);
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tolerance > 0.0 && tolerance < 1.0)) throw ConfigError("solver tolerance must lie in (0, 1)");
  if (max_iterations < 0) throw ConfigError("solver max_iterations must be >= 1 (or 0 for the default)");
}

SolveResult solve_spd(const SparseMatrix& a, const Eigen::VectorXd& b, const SolverConfig& config) {
  config.validate();
  if (a.rows() != a.cols() || a.rows() != b.size()) throw std::invalid_argument("solve_spd: dimension mismatch");
  if (b.size() == 0) return {};
  if (b.squaredNorm() == 0.0) {
    SolveResult out;
    out.x = Eigen::VectorXd::Zero(b.size());
    return out;
  }
  return config.method == SolverConfig::Method::cholesky ? solve_cholesky(a, b, config) : solve_cg(a, b, config);
}

SolveResult solve_spd(const AssembledSystem& system, const SolverConfig& config) {
  return solve_spd(system.matrix, system.rhs, config);
}

}  // namespace wg
