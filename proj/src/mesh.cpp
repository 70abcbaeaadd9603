#include "wg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace wg {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool on_rectangle_boundary(const Rectangle& r, const Vec2& p, double tol) {
  return std::abs(p.x() - r.x0) <= tol || std::abs(p.x() - r.x1) <= tol ||
         std::abs(p.y() - r.y0) <= tol || std::abs(p.y() - r.y1) <= tol;
}

}  // namespace

Mesh::Mesh(Rectangle domain, int n, std::vector<Vec2> vertices, std::vector<Element> elements,
           std::vector<Edge> edges)
    : domain_(domain),
      n_(n),
      vertices_(std::move(vertices)),
      elements_(std::move(elements)),
      edges_(std::move(edges)) {}

int Mesh::locate(const Vec2& p, double tol) const {
  auto inside = [&](int t) {
    const auto& el = elements_[t];
    const double scale = el.diameter;
    for (int i = 0; i < 3; ++i) {
      const Vec2& a = vertices_[el.vertices[i]];
      const Vec2& b = vertices_[el.vertices[(i + 1) % 3]];
      if (cross(b - a, p - a) < -tol * scale) return false;
    }
    return true;
  };

  // Structured guess first, then a linear scan.
  const double hx = domain_.width() / n_;
  const double hy = domain_.height() / n_;
  const int i = std::clamp(static_cast<int>(std::floor((p.x() - domain_.x0) / hx)), 0, n_ - 1);
  const int j = std::clamp(static_cast<int>(std::floor((p.y() - domain_.y0) / hy)), 0, n_ - 1);
  for (int t : {2 * (j * n_ + i), 2 * (j * n_ + i) + 1}) {
    if (inside(t)) return t;
  }
  for (int t = 0; t < num_elements(); ++t) {
    if (inside(t)) return t;
  }
  return -1;
}

Mesh build_structured_mesh(const Rectangle& domain, int n) {
  if (n < 1) throw std::invalid_argument("mesh: subdivision count must be >= 1, got " + std::to_string(n));
  if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0)) {
    throw std::invalid_argument("mesh: degenerate rectangle");
  }

  const int nv = n + 1;
  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<std::size_t>(nv) * nv);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      // Exact end coordinates so boundary vertices sit on the rectangle.
      const double x = (i == n) ? domain.x1 : domain.x0 + domain.width() * i / n;
      const double y = (j == n) ? domain.y1 : domain.y0 + domain.height() * j / n;
      vertices.emplace_back(x, y);
    }
  }

  std::vector<Element> elements;
  elements.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int bl = j * nv + i;
      const int br = bl + 1;
      const int tl = bl + nv;
      const int tr = tl + 1;
      // Diagonal tl-br has negative slope.
      Element lower;
      lower.vertices = {bl, br, tl};
      Element upper;
      upper.vertices = {br, tr, tl};
      elements.push_back(lower);
      elements.push_back(upper);
    }
  }

  std::vector<Edge> edges;
  edges.reserve(3 * static_cast<std::size_t>(n) * n + 2 * n);
  std::map<std::pair<int, int>, int> lookup;
  for (int t = 0; t < static_cast<int>(elements.size()); ++t) {
    auto& el = elements[t];
    const Vec2& a = vertices[el.vertices[0]];
    const Vec2& b = vertices[el.vertices[1]];
    const Vec2& c = vertices[el.vertices[2]];
    el.area = 0.5 * cross(b - a, c - a);
    el.centroid = (a + b + c) / 3.0;
    el.diameter = std::max({(b - a).norm(), (c - b).norm(), (a - c).norm()});

    for (int i = 0; i < 3; ++i) {
      const int p = el.vertices[i];
      const int q = el.vertices[(i + 1) % 3];
      const Vec2 side = vertices[q] - vertices[p];
      el.normals[i] = Vec2(side.y(), -side.x()).normalized();  // outward for CCW order

      const auto key = std::minmax(p, q);
      auto [it, inserted] = lookup.try_emplace({key.first, key.second}, static_cast<int>(edges.size()));
      if (inserted) {
        Edge e;
        e.vertices = {key.first, key.second};
        const Vec2 d = vertices[key.second] - vertices[key.first];
        e.length = d.norm();
        e.tangent = d / e.length;
        e.midpoint = 0.5 * (vertices[key.first] + vertices[key.second]);
        e.elements = {t, -1};
        e.normal = el.normals[i];  // first (lowest-index) owner: outward from it
        edges.push_back(e);
      } else {
        edges[it->second].elements[1] = t;
      }
      el.edges[i] = it->second;
    }
  }

  for (auto& e : edges) e.boundary = e.elements[1] < 0;

  for (auto& el : elements) {
    for (int i = 0; i < 3; ++i) {
      const Edge& e = edges[el.edges[i]];
      el.signs[i] = (el.normals[i].dot(e.normal) > 0.0) ? 1 : -1;
      // Exact equality with sigma * n_e.
      el.normals[i] = el.signs[i] * e.normal;
    }
  }

  return Mesh(domain, n, std::move(vertices), std::move(elements), std::move(edges));
}

EdgeClassification classify_edges(const Mesh& mesh) {
  EdgeClassification out;
  out.boundary.resize(mesh.num_edges());
  const Rectangle& r = mesh.domain();
  const double tol = 1e-12 * std::max(r.width(), r.height());
  for (int k = 0; k < mesh.num_edges(); ++k) {
    const Edge& e = mesh.edge(k);
    const bool single = e.elements[1] < 0;
    const Vec2& a = mesh.vertex(e.vertices[0]);
    const Vec2& b = mesh.vertex(e.vertices[1]);
    const bool geometric = on_rectangle_boundary(r, e.midpoint, tol) &&
                           on_rectangle_boundary(r, a, tol) && on_rectangle_boundary(r, b, tol);
    if (single != geometric) {
      throw std::logic_error("mesh: edge " + std::to_string(k) + " adjacency disagrees with geometry");
    }
    out.boundary[k] = single;
    (single ? out.num_boundary : out.num_interior)++;
  }
  return out;
}

void write_mesh_csv(const Mesh& mesh, std::ostream& out) {
  char buf[256];
  out << "# vertices id,x,y\n";
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    const Vec2& v = mesh.vertex(i);
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", i, v.x(), v.y());
    out << buf;
  }
  out << "# elements id,v0,v1,v2,e0,e1,e2,s0,s1,s2\n";
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const Element& el = mesh.element(t);
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%d,%d,%d,%d,%d,%d\n", t, el.vertices[0], el.vertices[1],
                  el.vertices[2], el.edges[0], el.edges[1], el.edges[2], el.signs[0], el.signs[1],
                  el.signs[2]);
    out << buf;
  }
  out << "# edges id,v0,v1,lower,upper,boundary,nx,ny\n";
  for (int k = 0; k < mesh.num_edges(); ++k) {
    const Edge& e = mesh.edge(k);
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%d,%d,%.17g,%.17g\n", k, e.vertices[0], e.vertices[1],
                  e.elements[0], e.elements[1], e.boundary ? 1 : 0, e.normal.x() + 0.0, e.normal.y() + 0.0);  // + 0.0 drops -0
    out << buf;
  }
}

}  // namespace wg
