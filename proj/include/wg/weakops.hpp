#pragma once

#include <array>

#include <Eigen/Dense>

#include "wg/coefficients.hpp"
#include "wg/dofs.hpp"
#include "wg/fields.hpp"
#include "wg/mesh.hpp"
#include "wg/poly.hpp"

namespace wg {

/// Which length enters the h_T^-1 / h_T^-3 stabilizer weights and the edge norms.
enum class StabilizerScale {
  mesh_size,  // sub-square side length (h = 1/n on the unit square)
  diameter,   // longest side of the triangle
};

struct EdgeFrame {
  Vec2 midpoint = Vec2::Zero();
  Vec2 tangent = Vec2::UnitX();
  Vec2 normal = Vec2::UnitY();  // the edge's stored (global) normal
  double length = 0.0;
  int sign = 1;  // sigma_T(e)

  Vec2 outward() const { return sign * normal; }
  /// Point at edge parameter t in [-1/2, 1/2].
  Vec2 point(double t) const { return midpoint + (t * length) * tangent; }
  EdgeMonomials basis(int degree) const { return {degree, midpoint, tangent, length}; }
};

struct ElementGeometry {
  Triangle triangle;
  std::array<EdgeFrame, 3> edges;
  double area = 0.0;
  double size = 0.0;  // h_T

  /// Monomials in the element's reference coordinates (see element_monomials).
  ScaledMonomials basis(int degree) const { return element_monomials(triangle, degree); }
};

ElementGeometry element_geometry(const Mesh& mesh, int element, StabilizerScale scale = StabilizerScale::mesh_size);

/// Stand-alone triangle (counterclockwise). Local edge i runs from v[i] to
/// v[i+1]; `signs` relate the outward normals to the stored ones. A
/// nonpositive `size` selects the diameter.
ElementGeometry element_geometry(const Triangle& triangle, const std::array<int, 3>& signs = {1, 1, 1},
                                 double size = 0.0);

/// Element-local matrices of the weak operators, acting on the 18 local dofs.
class LocalOperators {
 public:
  explicit LocalOperators(const ElementGeometry& geometry);

  const ElementGeometry& geometry() const { return geom_; }
  const ScaledMonomials& basis() const { return basis_; }
  const Eigen::Matrix<double, 6, 6>& mass() const { return mass_; }
  const Eigen::Matrix3d& mass_p1() const { return mass_p1_; }
  const Eigen::Matrix2d& edge_mass(int local_edge) const { return edge_mass_[local_edge]; }

  /// E_w v in P0(T): (E_w v, 1)_T = <v_g, 1>_{dT}.
  const Eigen::Matrix<double, 1, kLocalDofs>& laplacian() const { return laplacian_; }
  /// Coefficients of grad_w v in [P1(T)]^2 ordered (x-part, y-part).
  const Eigen::Matrix<double, 6, kLocalDofs>& gradient() const { return gradient_; }
  /// Q_b(v0|e) - v_b as P1(e) coefficients on a local edge.
  const Eigen::Matrix<double, kTraceDofs, kLocalDofs>& projected_trace_jump(int local_edge) const {
    return trace_jump_[local_edge];
  }

 private:
  ElementGeometry geom_;
  ScaledMonomials basis_;
  Eigen::Matrix<double, 6, 6> mass_;
  Eigen::Matrix3d mass_p1_;
  std::array<Eigen::Matrix2d, 3> edge_mass_;
  Eigen::Matrix<double, 1, kLocalDofs> laplacian_;
  Eigen::Matrix<double, 6, kLocalDofs> gradient_;
  std::array<Eigen::Matrix<double, kTraceDofs, kLocalDofs>, 3> trace_jump_;
};

/// E_w v on one element; v_g enters as sigma_T(e) * flux.
double weak_laplacian_kappa(const ElementGeometry& geometry, const LocalWeakFunction& v);

/// grad_w v in [P1(T)]^2, coefficients (x-part, y-part) in the element P1 basis.
Eigen::Matrix<double, 6, 1> weak_gradient(const ElementGeometry& geometry, const LocalWeakFunction& v);

Eigen::Matrix<double, 6, 1> project_Q0(const ElementGeometry& geometry, const ScalarField& u);
Eigen::Vector2d project_Qb(const EdgeFrame& edge, const ScalarField& u);
/// Same P1(e) projection; `flux` is a conormal flux sampled on the edge.
Eigen::Vector2d project_Qg(const EdgeFrame& edge, const ScalarField& flux);
double project_calQh(const ElementGeometry& geometry, const ScalarField& u);
Eigen::Matrix<double, 6, 1> project_calQ1(const ElementGeometry& geometry, const VectorField& w);

/// {Q0 u, Qb u, Qg(kappa grad u . n_e)} on a single element, flux stored in the
/// global-normal convention of each edge frame.
LocalWeakFunction project_Qh(const ElementGeometry& geometry, const ExactSolution& u, const Eigen::Matrix2d& kappa);

/// Global Q_h. On interior edges the flux uses kappa of the lower-indexed
/// neighbour (the side the stored normal points away from).
WeakFunction project_Qh(const Mesh& mesh, const ExactSolution& u, const CoefficientField& coefficients);

/// v0 of a local coefficient block evaluated at x.
double evaluate_interior(const ElementGeometry& geometry, const Eigen::Matrix<double, 6, 1>& coefficients,
                         const Vec2& x);

}  // namespace wg
