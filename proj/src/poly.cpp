#include "wg/poly.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wg {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_p.
void gauss_legendre(int p, std::vector<double>& x, std::vector<double>& w) {
  x.assign(p, 0.0);
  w.assign(p, 0.0);
  for (int i = 0; i < (p + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (p + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= p; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = p * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[p - 1 - i] = z;
    w[i] = w[p - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

TriangleRule triangle_quadrature(int degree) {
  if (degree < 0 || degree > kMaxTriangleDegree) {
    throw std::invalid_argument("triangle_quadrature: unsupported exactness degree " + std::to_string(degree));
  }
  // Duffy map (u, v) -> (u, v(1-u)) adds one degree in u through the Jacobian.
  const int m = (degree + 3) / 2;
  std::vector<double> g;
  std::vector<double> gw;
  gauss_legendre(m, g, gw);

  TriangleRule rule;
  rule.degree = degree;
  rule.points.reserve(m * m);
  rule.weights.reserve(m * m);
  for (int i = 0; i < m; ++i) {
    const double u = 0.5 * (g[i] + 1.0);
    for (int j = 0; j < m; ++j) {
      const double s = 0.5 * (g[j] + 1.0);
      rule.points.emplace_back(u, s * (1.0 - u));
      rule.weights.push_back(0.25 * gw[i] * gw[j] * (1.0 - u));
    }
  }
  return rule;
}

SegmentRule gauss_segment_quadrature(int points) {
  if (points < 1 || points > kMaxSegmentPoints) {
    throw std::invalid_argument("gauss_segment_quadrature: unsupported point count " + std::to_string(points));
  }
  SegmentRule rule;
  gauss_legendre(points, rule.points, rule.weights);
  for (auto& x : rule.points) x *= 0.5;
  for (auto& w : rule.weights) w *= 0.5;
  rule.degree = 2 * points - 1;
  return rule;
}

const TriangleRule& default_triangle_rule() {
  static const TriangleRule rule = triangle_quadrature(kElementRuleDegree);
  return rule;
}

const SegmentRule& default_segment_rule() {
  static const SegmentRule rule = gauss_segment_quadrature(kEdgeRulePoints);
  return rule;
}

double Triangle::signed_area() const {
  const Vec2 a = v[1] - v[0];
  const Vec2 b = v[2] - v[0];
  return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

double Triangle::diameter() const {
  return std::max({(v[1] - v[0]).norm(), (v[2] - v[1]).norm(), (v[0] - v[2]).norm()});
}

ElementQuadrature map_rule(const Triangle& tri, const TriangleRule& rule) {
  const double jac = 2.0 * tri.signed_area();
  if (!(jac > 0.0)) throw std::invalid_argument("map_rule: degenerate or clockwise triangle");
  ElementQuadrature q;
  q.points.reserve(rule.points.size());
  q.weights.reserve(rule.weights.size());
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    q.points.push_back(tri.map(rule.points[i]));
    q.weights.push_back(rule.weights[i] * jac);
  }
  return q;
}

ScaledMonomials::ScaledMonomials(int degree, Vec2 center, double scale)
    : ScaledMonomials(degree, center, scale > 0.0 ? Eigen::Matrix2d(Eigen::Matrix2d::Identity() / scale)
                                                  : Eigen::Matrix2d(Eigen::Matrix2d::Zero())) {}

ScaledMonomials::ScaledMonomials(int degree, Vec2 center, const Eigen::Matrix2d& transform)
    : degree_(degree), center_(center), transform_(transform) {
  if (degree < 0) throw std::invalid_argument("ScaledMonomials: negative degree");
  if (!(std::abs(transform.determinant()) > 0.0) || !transform.allFinite()) {
    throw std::invalid_argument("ScaledMonomials: singular coordinate transform");
  }
  for (int d = 0; d <= degree; ++d) {
    for (int b = 0; b <= d; ++b) exponents_.emplace_back(d - b, b);
  }
}

Eigen::VectorXd ScaledMonomials::values(const Vec2& x) const {
  const Vec2 s = transform_ * (x - center_);
  Eigen::VectorXd out(size());
  for (int i = 0; i < size(); ++i) {
    const auto [a, b] = exponents_[i];
    out[i] = ipow(s.x(), a) * ipow(s.y(), b);
  }
  return out;
}

Eigen::Matrix<double, 2, Eigen::Dynamic> ScaledMonomials::gradients(const Vec2& x) const {
  const Vec2 s = transform_ * (x - center_);
  Eigen::Matrix<double, 2, Eigen::Dynamic> local(2, size());
  for (int i = 0; i < size(); ++i) {
    const auto [a, b] = exponents_[i];
    local(0, i) = a > 0 ? a * ipow(s.x(), a - 1) * ipow(s.y(), b) : 0.0;
    local(1, i) = b > 0 ? b * ipow(s.x(), a) * ipow(s.y(), b - 1) : 0.0;
  }
  // Chain rule: grad_x = A^T grad_X.
  return transform_.transpose() * local;
}

ScaledMonomials element_monomials(const Triangle& tri, int degree) {
  Eigen::Matrix2d jac;
  jac.col(0) = tri.v[1] - tri.v[0];
  jac.col(1) = tri.v[2] - tri.v[0];
  return {degree, tri.centroid(), Eigen::Matrix2d(jac.inverse())};
}

EdgeMonomials::EdgeMonomials(int degree, Vec2 midpoint, Vec2 tangent, double length)
    : degree_(degree), midpoint_(midpoint), tangent_(tangent), length_(length) {
  if (degree < 0) throw std::invalid_argument("EdgeMonomials: negative degree");
  if (!(length > 0.0)) throw std::invalid_argument("EdgeMonomials: edge length must be positive");
}

Eigen::VectorXd EdgeMonomials::values(double t) const {
  Eigen::VectorXd out(size());
  double p = 1.0;
  for (int i = 0; i <= degree_; ++i) {
    out[i] = p;
    p *= t;
  }
  return out;
}

Eigen::MatrixXd element_mass_matrix(const Triangle& tri, const ScaledMonomials& basis, double weight) {
  const auto q = map_rule(tri);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  for (std::size_t i = 0; i < q.points.size(); ++i) {
    const Eigen::VectorXd phi = basis.values(q.points[i]);
    m.noalias() += (weight * q.weights[i]) * phi * phi.transpose();
  }
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd element_mass_matrix(const Triangle& tri, int degree, double weight) {
  return element_mass_matrix(tri, element_monomials(tri, degree), weight);
}

Eigen::MatrixXd vector_mass_matrix(const Eigen::MatrixXd& scalar_mass, const Eigen::Matrix2d& kappa) {
  const Eigen::Index n = scalar_mass.rows();
  Eigen::MatrixXd out(2 * n, 2 * n);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) out.block(a * n, b * n, n, n) = kappa(a, b) * scalar_mass;
  }
  return out;
}

Eigen::MatrixXd edge_mass_matrix(double length, int degree) {
  if (!(length > 0.0)) throw std::invalid_argument("edge_mass_matrix: edge length must be positive");
  const EdgeMonomials basis(degree, Vec2::Zero(), Vec2::UnitX(), length);
  const SegmentRule& rule = default_segment_rule();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const Eigen::VectorXd phi = basis.values(rule.points[i]);
    m.noalias() += (length * rule.weights[i]) * phi * phi.transpose();
  }
  return m;
}

}  // namespace wg
