#include "wg/assembly.hpp"

#include <cmath>
#include <string>

#include "wg/error.hpp"

namespace wg {

LocalMatrix local_system(const LocalOperators& ops, const Eigen::Matrix2d& kappa, double mu,
                         const AssemblyOptions& options) {
  const ElementGeometry& g = ops.geometry();
  const double h = g.size;

  LocalMatrix a = g.area * ops.laplacian().transpose() * ops.laplacian();

  if (mu != 0.0) {
    const Eigen::MatrixXd k = vector_mass_matrix(ops.mass_p1(), kappa);
    a.noalias() += (2.0 * mu) * ops.gradient().transpose() * k * ops.gradient();
    a.topLeftCorner<kInteriorDofs, kInteriorDofs>() += (mu * mu) * ops.mass();
  }

  const SegmentRule& seg = default_segment_rule();
  for (int le = 0; le < 3; ++le) {
    const EdgeFrame& e = g.edges[le];
    const EdgeMonomials eb = e.basis(1);
    const Vec2 kn = kappa * e.outward();
    for (std::size_t q = 0; q < seg.points.size(); ++q) {
      const double t = seg.points[q];
      const double w = seg.weights[q] * e.length;
      const Vec2 x = e.point(t);
      const Eigen::Vector2d psi = eb.values(t);

      Eigen::Matrix<double, kLocalDofs, 1> flux = Eigen::Matrix<double, kLocalDofs, 1>::Zero();
      flux.head<kInteriorDofs>() = ops.basis().gradients(x).transpose() * kn;
      flux.segment<kFluxDofs>(local_flux_offset(le)) = -e.sign * psi;
      a.noalias() += (w / h) * flux * flux.transpose();

      if (options.trace == StabilizerTrace::full) {
        Eigen::Matrix<double, kLocalDofs, 1> jump = Eigen::Matrix<double, kLocalDofs, 1>::Zero();
        jump.head<kInteriorDofs>() = ops.basis().values(x);
        jump.segment<kTraceDofs>(local_trace_offset(le)) = -psi;
        a.noalias() += (w / (h * h * h)) * jump * jump.transpose();
      }
    }
    if (options.trace == StabilizerTrace::projected) {
      const auto& c = ops.projected_trace_jump(le);
      a.noalias() += (1.0 / (h * h * h)) * c.transpose() * ops.edge_mass(le) * c;
    }
  }
  return 0.5 * (a + a.transpose());
}

Eigen::Matrix<double, kInteriorDofs, 1> local_load(const LocalOperators& ops, const ScalarField& f) {
  const ElementQuadrature q = map_rule(ops.geometry().triangle);
  Eigen::Matrix<double, kInteriorDofs, 1> b = Eigen::Matrix<double, kInteriorDofs, 1>::Zero();
  for (std::size_t k = 0; k < q.points.size(); ++k) {
    b.noalias() += (q.weights[k] * f(q.points[k])) * ops.basis().values(q.points[k]);
  }
  return b;
}

SparseMatrix assemble_operator(const Mesh& mesh, const CoefficientField& coefficients,
                               const AssemblyOptions& options) {
  const DofMap dofs(mesh);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.num_elements()) * kLocalDofs * kLocalDofs);
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const LocalOperators ops(element_geometry(mesh, t, options.scale));
    const LocalMatrix a = local_system(ops, coefficients.kappa(t), coefficients.mu(t), options);
    const auto ids = dofs.local_dofs(t);
    for (int j = 0; j < kLocalDofs; ++j) {
      for (int i = 0; i < kLocalDofs; ++i) triplets.emplace_back(ids[i], ids[j], a(i, j));
    }
  }
  SparseMatrix m(dofs.size(), dofs.size());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

Eigen::VectorXd boundary_values(const Mesh& mesh, const ScalarField& xi, const ScalarField& nu) {
  const DofMap dofs(mesh);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dofs.size());
  for (int k = 0; k < mesh.num_edges(); ++k) {
    const Edge& e = mesh.edge(k);
    if (!e.boundary) continue;
    const EdgeFrame frame{e.midpoint, e.tangent, e.normal, e.length, 1};
    const Eigen::Vector2d b = project_Qb(frame, xi);
    const Eigen::Vector2d g = project_Qg(frame, nu);
    if (!b.allFinite() || !g.allFinite()) {
      throw NumericalError("boundary data projection is not finite on edge " + std::to_string(k));
    }
    out.segment<kTraceDofs>(dofs.trace_offset(k)) = b;
    out.segment<kFluxDofs>(dofs.flux_offset(k)) = g;
  }
  return out;
}

WeakFunction AssembledSystem::expand(const Eigen::VectorXd& free_values) const {
  Eigen::VectorXd full = boundary;
  for (int i = 0; i < num_free(); ++i) full[free_dofs[i]] = free_values[i];
  return WeakFunction(dofs, std::move(full));
}

AssembledSystem assemble(const Mesh& mesh, const CoefficientField& coefficients, const ProblemSpec& problem,
                         const AssemblyOptions& options) {
  AssembledSystem sys{DofMap(mesh), {}, {}, {}, {}};
  const DofMap& dofs = sys.dofs;
  const auto& fixed = dofs.boundary_mask();

  std::vector<int> to_free(dofs.size(), -1);
  for (int i = 0; i < dofs.size(); ++i) {
    if (fixed[i]) continue;
    to_free[i] = static_cast<int>(sys.free_dofs.size());
    sys.free_dofs.push_back(i);
  }
  const int nfree = sys.num_free();

  sys.boundary = boundary_values(mesh, problem.xi, problem.nu);

  Eigen::VectorXd load = Eigen::VectorXd::Zero(dofs.size());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.num_elements()) * kLocalDofs * kLocalDofs);
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const LocalOperators ops(element_geometry(mesh, t, options.scale));
    const LocalMatrix a = local_system(ops, coefficients.kappa(t), coefficients.mu(t), options);
    const auto ids = dofs.local_dofs(t);
    load.segment<kInteriorDofs>(dofs.interior_offset(t)) += local_load(ops, problem.f);
    for (int j = 0; j < kLocalDofs; ++j) {
      const int cj = to_free[ids[j]];
      for (int i = 0; i < kLocalDofs; ++i) {
        const int ri = to_free[ids[i]];
        if (ri < 0) continue;
        if (cj >= 0) {
          triplets.emplace_back(ri, cj, a(i, j));
        } else {
          load[ids[i]] -= a(i, j) * sys.boundary[ids[j]];
        }
      }
    }
  }
  if (!load.allFinite()) throw NumericalError("load vector is not finite");

  sys.matrix.resize(nfree, nfree);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.rhs.resize(nfree);
  for (int i = 0; i < nfree; ++i) sys.rhs[i] = load[sys.free_dofs[i]];
  return sys;
}

AssembledSystem assemble(const Mesh& mesh, const ProblemSpec& problem, const AssemblyOptions& options) {
  return assemble(mesh, CoefficientField(mesh, problem.coefficients), problem, options);
}

double triple_bar_norm(const Mesh& mesh, const CoefficientField& coefficients, const WeakFunction& w,
                       const AssemblyOptions& options) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const LocalOperators ops(element_geometry(mesh, t, options.scale));
    const LocalVector v = w.local_vector(t);
    sum += v.dot(local_system(ops, coefficients.kappa(t), coefficients.mu(t), options) * v);
  }
  return std::sqrt(std::max(sum, 0.0));
}

}  // namespace wg
