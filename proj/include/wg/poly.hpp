#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wg/mesh.hpp"

namespace wg {

/// Rule on the reference triangle (0,0),(1,0),(0,1); weights sum to 1/2.
struct TriangleRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int degree = 0;
};

/// Rule on the reference interval [-1/2, 1/2]; weights sum to 1.
struct SegmentRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;
};

inline constexpr int kMaxTriangleDegree = 20;
inline constexpr int kMaxSegmentPoints = 16;

/// Module-wide defaults: every element integral uses the same rule, every edge
/// integral the same 5-point Gauss rule (exact to degree 9).
inline constexpr int kElementRuleDegree = 10;
inline constexpr int kEdgeRulePoints = 5;

/// Collapsed Gauss-Legendre product rule exact for total degree <= `degree`.
/// Throws std::invalid_argument outside 0..kMaxTriangleDegree.
TriangleRule triangle_quadrature(int degree);

/// Gauss-Legendre with `points` nodes (exact to degree 2p-1).
/// Throws std::invalid_argument outside 1..kMaxSegmentPoints.
SegmentRule gauss_segment_quadrature(int points);

const TriangleRule& default_triangle_rule();
const SegmentRule& default_segment_rule();

struct Triangle {
  std::array<Vec2, 3> v;

  double signed_area() const;
  double area() const { return std::abs(signed_area()); }
  Vec2 centroid() const { return (v[0] + v[1] + v[2]) / 3.0; }
  double diameter() const;
  Vec2 map(const Vec2& ref) const { return v[0] + ref.x() * (v[1] - v[0]) + ref.y() * (v[2] - v[0]); }
};

/// Points and weights of a reference rule mapped onto a physical triangle.
struct ElementQuadrature {
  std::vector<Vec2> points;
  std::vector<double> weights;
};

/// Throws std::invalid_argument for a triangle with area <= 0.
ElementQuadrature map_rule(const Triangle& tri, const TriangleRule& rule = default_triangle_rule());

/// Monomials X^a Y^b, a + b <= degree, of the local coordinates
/// (X, Y) = A (x - c), ordered by total degree then decreasing power of X:
/// 1, X, Y, X^2, XY, Y^2, ...
class ScaledMonomials {
 public:
  /// A = I / scale.
  ScaledMonomials(int degree, Vec2 center, double scale);
  ScaledMonomials(int degree, Vec2 center, const Eigen::Matrix2d& transform);

  static int dimension(int degree) { return (degree + 1) * (degree + 2) / 2; }

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exponents_.size()); }
  const Vec2& center() const { return center_; }
  const Eigen::Matrix2d& transform() const { return transform_; }
  const std::vector<std::pair<int, int>>& exponents() const { return exponents_; }

  Eigen::VectorXd values(const Vec2& x) const;
  /// Row 0: d/dx, row 1: d/dy.
  Eigen::Matrix<double, 2, Eigen::Dynamic> gradients(const Vec2& x) const;

 private:
  int degree_;
  Vec2 center_;
  Eigen::Matrix2d transform_;
  std::vector<std::pair<int, int>> exponents_;
};

/// Basis 1, t, t^2, ... in the scaled arc-length parameter t in [-1/2, 1/2]
/// about the edge midpoint, oriented along the edge tangent.
class EdgeMonomials {
 public:
  EdgeMonomials(int degree, Vec2 midpoint, Vec2 tangent, double length);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }
  double length() const { return length_; }

  double parameter(const Vec2& x) const { return (x - midpoint_).dot(tangent_) / length_; }
  Vec2 point(double t) const { return midpoint_ + (t * length_) * tangent_; }
  Eigen::VectorXd values(double t) const;

 private:
  int degree_;
  Vec2 midpoint_;
  Vec2 tangent_;
  double length_;
};

Eigen::MatrixXd element_mass_matrix(const Triangle& tri, const ScaledMonomials& basis, double weight = 1.0);

/// Monomials in the triangle's own reference coordinates, centred at the
/// centroid: (X, Y) = J^-1 (x - c) with J = [v1 - v0, v2 - v0]. Their mass
/// matrix is |T| times a fixed matrix, so conditioning does not degrade on
/// thin elements.
ScaledMonomials element_monomials(const Triangle& tri, int degree);

/// Mass matrix of element_monomials(tri, degree).
Eigen::MatrixXd element_mass_matrix(const Triangle& tri, int degree, double weight = 1.0);

/// Vector-valued mass (kappa psi, phi) for psi, phi in [P_r]^2 ordered as
/// (phi_i, 0) then (0, phi_i).
Eigen::MatrixXd vector_mass_matrix(const Eigen::MatrixXd& scalar_mass, const Eigen::Matrix2d& kappa);

/// Throws std::invalid_argument for length <= 0.
Eigen::MatrixXd edge_mass_matrix(double length, int degree);

}  // namespace wg
