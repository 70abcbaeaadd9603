#include "wg/weakops.hpp"

#include <stdexcept>

namespace wg {

namespace {

Eigen::Matrix<double, 6, 1> solve_mass(const Eigen::Matrix<double, 6, 6>& m, const Eigen::Matrix<double, 6, 1>& b) {
  return m.llt().solve(b);
}

}  // namespace

ElementGeometry element_geometry(const Mesh& mesh, int element, StabilizerScale scale) {
  const Element& el = mesh.element(element);
  ElementGeometry g;
  for (int i = 0; i < 3; ++i) g.triangle.v[i] = mesh.vertex(el.vertices[i]);
  g.area = el.area;
  g.size = (scale == StabilizerScale::mesh_size) ? mesh.mesh_size() : el.diameter;
  for (int i = 0; i < 3; ++i) {
    const Edge& e = mesh.edge(el.edges[i]);
    g.edges[i] = EdgeFrame{e.midpoint, e.tangent, e.normal, e.length, el.signs[i]};
  }
  return g;
}

ElementGeometry element_geometry(const Triangle& triangle, const std::array<int, 3>& signs, double size) {
  if (!(triangle.signed_area() > 0.0)) throw std::invalid_argument("element_geometry: degenerate or clockwise triangle");
  ElementGeometry g;
  g.triangle = triangle;
  g.area = triangle.area();
  g.size = size > 0.0 ? size : triangle.diameter();
  for (int i = 0; i < 3; ++i) {
    const Vec2& a = triangle.v[i];
    const Vec2& b = triangle.v[(i + 1) % 3];
    const Vec2 d = b - a;
    const double len = d.norm();
    const Vec2 outward(d.y() / len, -d.x() / len);
    g.edges[i] = EdgeFrame{0.5 * (a + b), d / len, signs[i] * outward, len, signs[i]};
  }
  return g;
}

LocalOperators::LocalOperators(const ElementGeometry& geometry)
    : geom_(geometry), basis_(geometry.basis(2)) {
  const ElementQuadrature q = map_rule(geom_.triangle);
  const SegmentRule& seg = default_segment_rule();

  mass_.setZero();
  Eigen::Matrix<double, 6, kLocalDofs> rhs = Eigen::Matrix<double, 6, kLocalDofs>::Zero();
  for (std::size_t k = 0; k < q.points.size(); ++k) {
    const Eigen::VectorXd phi = basis_.values(q.points[k]);
    const auto grad = basis_.gradients(q.points[k]);
    const double w = q.weights[k];
    mass_.noalias() += w * phi * phi.transpose();
    rhs.block<3, 6>(0, 0).noalias() += w * phi.head<3>() * grad.row(0);
    rhs.block<3, 6>(3, 0).noalias() += w * phi.head<3>() * grad.row(1);
  }
  mass_ = 0.5 * (mass_ + mass_.transpose()).eval();
  mass_p1_ = mass_.topLeftCorner<3, 3>();

  laplacian_.setZero();
  for (int le = 0; le < 3; ++le) {
    const EdgeFrame& e = geom_.edges[le];
    const EdgeMonomials eb = e.basis(1);
    const Vec2 n = e.outward();

    Eigen::Matrix2d me = Eigen::Matrix2d::Zero();
    Eigen::Matrix<double, 2, 6> cross = Eigen::Matrix<double, 2, 6>::Zero();
    for (std::size_t k = 0; k < seg.points.size(); ++k) {
      const double t = seg.points[k];
      const double w = seg.weights[k] * e.length;
      const Vec2 x = e.point(t);
      const Eigen::VectorXd phi = basis_.values(x);
      const Eigen::Vector2d psi = eb.values(t);

      me.noalias() += w * psi * psi.transpose();
      cross.noalias() += w * psi * phi.transpose();

      // <v0 - v_b, psi . n>
      Eigen::Matrix<double, 1, kLocalDofs> jump = Eigen::Matrix<double, 1, kLocalDofs>::Zero();
      jump.head<6>() = phi.transpose();
      jump.segment<kTraceDofs>(local_trace_offset(le)) = -psi.transpose();
      rhs.topRows<3>().noalias() -= (w * n.x()) * phi.head<3>() * jump;
      rhs.bottomRows<3>().noalias() -= (w * n.y()) * phi.head<3>() * jump;

      laplacian_.segment<kFluxDofs>(local_flux_offset(le)) += (e.sign * w / geom_.area) * psi.transpose();
    }
    edge_mass_[le] = me;

    auto& c = trace_jump_[le];
    c.setZero();
    c.leftCols<6>() = me.llt().solve(cross);
    c.block<2, 2>(0, local_trace_offset(le)) = -Eigen::Matrix2d::Identity();
  }

  const Eigen::LLT<Eigen::Matrix3d> m1(mass_p1_);
  gradient_.topRows<3>() = m1.solve(rhs.topRows<3>());
  gradient_.bottomRows<3>() = m1.solve(rhs.bottomRows<3>());
}

double weak_laplacian_kappa(const ElementGeometry& geometry, const LocalWeakFunction& v) {
  double sum = 0.0;
  const SegmentRule& seg = default_segment_rule();
  for (int le = 0; le < 3; ++le) {
    const EdgeFrame& e = geometry.edges[le];
    const EdgeMonomials eb = e.basis(1);
    for (std::size_t k = 0; k < seg.points.size(); ++k) {
      sum += e.sign * seg.weights[k] * e.length * eb.values(seg.points[k]).dot(v.flux[le]);
    }
  }
  return sum / geometry.area;
}

Eigen::Matrix<double, 6, 1> weak_gradient(const ElementGeometry& geometry, const LocalWeakFunction& v) {
  return LocalOperators(geometry).gradient() * v.to_vector();
}

Eigen::Matrix<double, 6, 1> project_Q0(const ElementGeometry& geometry, const ScalarField& u) {
  const ScaledMonomials basis = geometry.basis(2);
  const ElementQuadrature q = map_rule(geometry.triangle);
  Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
  Eigen::Matrix<double, 6, 1> b = Eigen::Matrix<double, 6, 1>::Zero();
  for (std::size_t k = 0; k < q.points.size(); ++k) {
    const Eigen::VectorXd phi = basis.values(q.points[k]);
    m.noalias() += q.weights[k] * phi * phi.transpose();
    b.noalias() += (q.weights[k] * u(q.points[k])) * phi;
  }
  return solve_mass(m, b);
}

Eigen::Vector2d project_Qb(const EdgeFrame& edge, const ScalarField& u) {
  const EdgeMonomials eb = edge.basis(1);
  const SegmentRule& seg = default_segment_rule();
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
  for (std::size_t k = 0; k < seg.points.size(); ++k) {
    const double t = seg.points[k];
    const double w = seg.weights[k] * edge.length;
    const Eigen::Vector2d psi = eb.values(t);
    m.noalias() += w * psi * psi.transpose();
    b.noalias() += (w * u(edge.point(t))) * psi;
  }
  return m.llt().solve(b);
}

Eigen::Vector2d project_Qg(const EdgeFrame& edge, const ScalarField& flux) { return project_Qb(edge, flux); }

double project_calQh(const ElementGeometry& geometry, const ScalarField& u) {
  const ElementQuadrature q = map_rule(geometry.triangle);
  double sum = 0.0;
  double area = 0.0;
  for (std::size_t k = 0; k < q.points.size(); ++k) {
    sum += q.weights[k] * u(q.points[k]);
    area += q.weights[k];
  }
  return sum / area;
}

Eigen::Matrix<double, 6, 1> project_calQ1(const ElementGeometry& geometry, const VectorField& w) {
  const ScaledMonomials basis = geometry.basis(1);
  const ElementQuadrature q = map_rule(geometry.triangle);
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  Eigen::Vector3d bx = Eigen::Vector3d::Zero();
  Eigen::Vector3d by = Eigen::Vector3d::Zero();
  for (std::size_t k = 0; k < q.points.size(); ++k) {
    const Eigen::Vector3d phi = basis.values(q.points[k]);
    const Vec2 val = w(q.points[k]);
    m.noalias() += q.weights[k] * phi * phi.transpose();
    bx += (q.weights[k] * val.x()) * phi;
    by += (q.weights[k] * val.y()) * phi;
  }
  const Eigen::LLT<Eigen::Matrix3d> llt(m);
  Eigen::Matrix<double, 6, 1> out;
  out << llt.solve(bx), llt.solve(by);
  return out;
}

LocalWeakFunction project_Qh(const ElementGeometry& geometry, const ExactSolution& u, const Eigen::Matrix2d& kappa) {
  LocalWeakFunction out;
  out.interior = project_Q0(geometry, u.value);
  for (int le = 0; le < 3; ++le) {
    const EdgeFrame& e = geometry.edges[le];
    out.trace[le] = project_Qb(e, u.value);
    const Vec2 kn = kappa * e.normal;
    out.flux[le] = project_Qg(e, [&](const Vec2& x) { return kn.dot(u.gradient(x)); });
  }
  return out;
}

WeakFunction project_Qh(const Mesh& mesh, const ExactSolution& u, const CoefficientField& coefficients) {
  WeakFunction out{DofMap(mesh)};
  const DofMap& dofs = out.dofs();
  Eigen::VectorXd& c = out.coefficients();
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const ElementGeometry g = element_geometry(mesh, t);
    c.segment<kInteriorDofs>(dofs.interior_offset(t)) = project_Q0(g, u.value);
  }
  for (int k = 0; k < mesh.num_edges(); ++k) {
    const Edge& e = mesh.edge(k);
    const EdgeFrame frame{e.midpoint, e.tangent, e.normal, e.length, 1};
    c.segment<kTraceDofs>(dofs.trace_offset(k)) = project_Qb(frame, u.value);
    const Vec2 kn = coefficients.kappa(e.elements[0]) * e.normal;
    c.segment<kFluxDofs>(dofs.flux_offset(k)) =
        project_Qg(frame, [&](const Vec2& x) { return kn.dot(u.gradient(x)); });
  }
  return out;
}

double evaluate_interior(const ElementGeometry& geometry, const Eigen::Matrix<double, 6, 1>& coefficients,
                         const Vec2& x) {
  return geometry.basis(2).values(x).dot(coefficients);
}

}  // namespace wg
