#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "wg/coefficients.hpp"
#include "wg/dofs.hpp"
#include "wg/fields.hpp"
#include "wg/mesh.hpp"
#include "wg/weakops.hpp"

namespace wg {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Trace part of the stabilizer, h_T^-3 <a, b>_{dT}.
enum class StabilizerTrace {
  projected,  // a = Q_b(u0|e) - u_b: exact on quadratics in the P1 trace space
  full,       // a = u0 - u_b
};

struct AssemblyOptions {
  StabilizerTrace trace = StabilizerTrace::projected;
  StabilizerScale scale = StabilizerScale::mesh_size;
};

/// (-div(kappa grad) + mu)^2 u = f, u = xi and kappa grad u . n = nu on the boundary.
struct ProblemSpec {
  ScalarField f;
  ScalarField xi;
  ScalarField nu;  // with the domain-outward normal
  std::optional<ExactSolution> exact;
  CoefficientSpec coefficients;
};

/// Element matrix of
///   (E_w u, E_w v)_T + 2 mu (kappa grad_w u, grad_w v)_T + mu^2 (u0, v0)_T
///   + h^-1 <kappa grad u0 . n - u_g, kappa grad v0 . n - v_g>_{dT} + h^-3 <trace jumps>_{dT}
/// in the global v_g convention of `ops.geometry()`.
LocalMatrix local_system(const LocalOperators& ops, const Eigen::Matrix2d& kappa, double mu,
                         const AssemblyOptions& options = {});

/// Load contributions (f, phi_i)_T on the six v0 dofs.
Eigen::Matrix<double, kInteriorDofs, 1> local_load(const LocalOperators& ops, const ScalarField& f);

/// Full operator over every dof (boundary included).
SparseMatrix assemble_operator(const Mesh& mesh, const CoefficientField& coefficients,
                               const AssemblyOptions& options = {});

/// Full-length vector holding Q_b xi and Q_g nu on boundary edge dofs, zero
/// elsewhere. Throws NumericalError on non-finite projections.
Eigen::VectorXd boundary_values(const Mesh& mesh, const ScalarField& xi, const ScalarField& nu);

struct AssembledSystem {
  DofMap dofs;
  SparseMatrix matrix;  // free x free
  Eigen::VectorXd rhs;
  Eigen::VectorXd boundary;  // full length, see boundary_values()
  std::vector<int> free_dofs;

  int num_free() const { return static_cast<int>(free_dofs.size()); }
  /// Combine a free-dof vector with the fixed boundary values.
  WeakFunction expand(const Eigen::VectorXd& free_values) const;
};

/// Boundary dofs are fixed and eliminated symmetrically.
AssembledSystem assemble(const Mesh& mesh, const CoefficientField& coefficients, const ProblemSpec& problem,
                         const AssemblyOptions& options = {});
AssembledSystem assemble(const Mesh& mesh, const ProblemSpec& problem, const AssemblyOptions& options = {});

/// sqrt of the element-summed quadratic form. For the discrete norm of V_h^0
/// the boundary blocks of w should vanish.
double triple_bar_norm(const Mesh& mesh, const CoefficientField& coefficients, const WeakFunction& w,
                       const AssemblyOptions& options = {});

}  // namespace wg
