#pragma once

#include <algorithm>
#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace wg {

using Vec2 = Eigen::Vector2d;

/// Axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rectangle {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool contains(const Vec2& p, double tol = 0.0) const {
    return p.x() >= x0 - tol && p.x() <= x1 + tol && p.y() >= y0 - tol && p.y() <= y1 + tol;
  }
};

struct Element {
  std::array<int, 3> vertices{};  // counterclockwise
  /// Local edge i joins vertices[i] and vertices[(i+1)%3].
  std::array<int, 3> edges{};
  /// +1 when the element-outward normal on edge i equals the edge's stored normal.
  std::array<int, 3> signs{};
  std::array<Vec2, 3> normals;  // element-outward unit normals
  Vec2 centroid = Vec2::Zero();
  double area = 0.0;
  double diameter = 0.0;  // longest side
};

struct Edge {
  std::array<int, 2> vertices{};
  /// Boundary edges: domain-outward. Interior: from elements[0] towards elements[1].
  Vec2 normal = Vec2::Zero();
  /// Unit vector from vertices[0] to vertices[1]; defines the edge parameter.
  Vec2 tangent = Vec2::Zero();
  Vec2 midpoint = Vec2::Zero();
  double length = 0.0;
  bool boundary = false;
  /// elements[0] < elements[1]; elements[1] == -1 on the boundary.
  std::array<int, 2> elements{-1, -1};
};

/// Structured triangulation of a rectangle: n x n sub-squares, each cut by its
/// negative-slope diagonal. Immutable after construction.
class Mesh {
 public:
  Mesh(Rectangle domain, int n, std::vector<Vec2> vertices, std::vector<Element> elements,
       std::vector<Edge> edges);

  const Rectangle& domain() const { return domain_; }
  int subdivisions() const { return n_; }
  /// Longest side of a sub-square (equals 1/n on the unit square).
  double mesh_size() const { return std::max(domain_.width(), domain_.height()) / n_; }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<Edge>& edges() const { return edges_; }

  const Vec2& vertex(int i) const { return vertices_[i]; }
  const Element& element(int t) const { return elements_[t]; }
  const Edge& edge(int e) const { return edges_[e]; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_elements() const { return static_cast<int>(elements_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  /// Index of an element containing p (closed triangles, tolerance tol), or -1.
  int locate(const Vec2& p, double tol = 1e-12) const;

 private:
  Rectangle domain_;
  int n_;
  std::vector<Vec2> vertices_;
  std::vector<Element> elements_;
  std::vector<Edge> edges_;
};

/// Throws std::invalid_argument for n < 1 or a degenerate rectangle.
Mesh build_structured_mesh(const Rectangle& domain, int n);

struct EdgeClassification {
  std::vector<bool> boundary;
  int num_boundary = 0;
  int num_interior = 0;
};

/// An edge is a boundary edge iff it has a single adjacent element. Throws
/// std::logic_error if that disagrees with the edge lying on the rectangle.
EdgeClassification classify_edges(const Mesh& mesh);

/// CSV dump with `# vertices`, `# elements`, `# edges` sections.
void write_mesh_csv(const Mesh& mesh, std::ostream& out);

}  // namespace wg
