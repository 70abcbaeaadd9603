#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "wg/dofs.hpp"
#include "wg/mesh.hpp"

namespace wg {
namespace {

TEST(StructuredMesh, CountsForOneSquare) {
  const Mesh m = build_structured_mesh(Rectangle{}, 1);
  EXPECT_EQ(m.num_elements(), 2);
  EXPECT_EQ(m.num_edges(), 5);
  EXPECT_EQ(m.num_vertices(), 4);
}

TEST(StructuredMesh, CountsFollowClosedForms) {
  for (int n = 1; n <= 16; ++n) {
    const Mesh m = build_structured_mesh(Rectangle{}, n);
    EXPECT_EQ(m.num_elements(), 2 * n * n);
    EXPECT_EQ(m.num_edges(), 3 * n * n + 2 * n);
    EXPECT_EQ(m.num_vertices(), (n + 1) * (n + 1));
    // V - E + F = 1 with the outer face excluded.
    EXPECT_EQ(m.num_vertices() - m.num_edges() + m.num_elements(), 1);
  }
  EXPECT_EQ(build_structured_mesh(Rectangle{}, 2).num_edges(), 16);
  EXPECT_EQ(build_structured_mesh(Rectangle{}, 64).num_elements(), 8192);
}

TEST(StructuredMesh, AreasAndDiameters) {
  const Rectangle r{-1.0, 2.0, 3.0, 4.5};
  const int n = 5;
  const Mesh m = build_structured_mesh(r, n);
  double total = 0.0;
  for (const auto& el : m.elements()) {
    EXPECT_GT(el.area, 0.0);
    EXPECT_NEAR(el.area, r.area() / (2.0 * n * n), 1e-14 * r.area());
    EXPECT_NEAR(el.diameter, std::hypot(r.width() / n, r.height() / n), 1e-14);
    total += el.area;
  }
  EXPECT_NEAR(total, r.area(), 1e-13 * r.area());
}

TEST(StructuredMesh, DiagonalHasNegativeSlope) {
  const Mesh m = build_structured_mesh(Rectangle{}, 3);
  for (int t = 0; t < m.num_elements(); t += 2) {
    // Local edge 1 of the lower triangle is the diagonal br -> tl.
    const Edge& diag = m.edge(m.element(t).edges[1]);
    EXPECT_FALSE(diag.boundary);
    EXPECT_LT(diag.tangent.x() * diag.tangent.y(), 0.0);
  }
}

TEST(StructuredMesh, EdgeAdjacencyAndOrientation) {
  const Mesh m = build_structured_mesh(Rectangle{}, 6);
  std::vector<int> refs(m.num_edges(), 0);
  for (const auto& el : m.elements()) {
    for (int i = 0; i < 3; ++i) ++refs[el.edges[i]];
  }
  for (int k = 0; k < m.num_edges(); ++k) {
    const Edge& e = m.edge(k);
    EXPECT_EQ(refs[k], e.boundary ? 1 : 2);
    EXPECT_NEAR(e.normal.norm(), 1.0, 1e-14);
    if (e.boundary) {
      EXPECT_GT(e.normal.dot(e.midpoint - Vec2(0.5, 0.5)), 0.0);
      continue;
    }
    const Element& lo = m.element(e.elements[0]);
    const Element& hi = m.element(e.elements[1]);
    EXPECT_LT(e.elements[0], e.elements[1]);
    int s_lo = 0, s_hi = 0;
    for (int i = 0; i < 3; ++i) {
      if (lo.edges[i] == k) s_lo = lo.signs[i];
      if (hi.edges[i] == k) s_hi = hi.signs[i];
    }
    EXPECT_EQ(s_lo, 1);
    EXPECT_EQ(s_hi, -1);
    EXPECT_GT(e.normal.dot(hi.centroid - lo.centroid), 0.0);
  }
  for (const auto& el : m.elements()) {
    for (int i = 0; i < 3; ++i) {
      const Vec2 expected = el.signs[i] * m.edge(el.edges[i]).normal;
      EXPECT_LE((el.normals[i] - expected).norm(), 1e-14);
      EXPECT_NEAR(el.normals[i].norm(), 1.0, 1e-14);
      // Outward: points away from the centroid.
      EXPECT_GT(el.normals[i].dot(m.edge(el.edges[i]).midpoint - el.centroid), 0.0);
    }
  }
}

TEST(StructuredMesh, RejectsInvalidInput) {
  EXPECT_THROW(build_structured_mesh(Rectangle{}, 0), std::invalid_argument);
  EXPECT_THROW(build_structured_mesh(Rectangle{0, 0, 0, 1}, 2), std::invalid_argument);
  EXPECT_THROW(build_structured_mesh(Rectangle{0, 1, 1, 0.5}, 2), std::invalid_argument);
}

TEST(ClassifyBoundary, EdgeCounts) {
  auto check = [](int n, int boundary, int interior) {
    const auto c = classify_edges(build_structured_mesh(Rectangle{}, n));
    EXPECT_EQ(c.num_boundary, boundary) << "n=" << n;
    EXPECT_EQ(c.num_interior, interior) << "n=" << n;
  };
  check(1, 4, 1);
  check(2, 8, 8);
  check(64, 256, 3 * 64 * 64 - 2 * 64);
}

TEST(ClassifyBoundary, DofFlagsCoverBoundaryEdgeBlocks) {
  const Mesh m = build_structured_mesh(Rectangle{}, 3);
  const auto c = classify_boundary(m);
  const DofMap dofs(m);
  int flagged = 0;
  for (bool b : c.dofs) flagged += b;
  EXPECT_EQ(flagged, 4 * 3 * kEdgeDofs);
  for (int k = 0; k < m.num_edges(); ++k) {
    EXPECT_EQ(c.edges[k], m.edge(k).boundary);
    EXPECT_EQ(c.dofs[dofs.trace_offset(k)], m.edge(k).boundary);
    EXPECT_EQ(c.dofs[dofs.flux_offset(k) + 1], m.edge(k).boundary);
  }
}

TEST(Locate, FindsContainingElement) {
  const Mesh m = build_structured_mesh(Rectangle{}, 4);
  EXPECT_EQ(m.locate(Vec2(0.05, 0.05)), 0);
  EXPECT_EQ(m.locate(Vec2(0.2, 0.2)), 1);
  EXPECT_GE(m.locate(Vec2(1.0, 1.0)), 0);
  EXPECT_EQ(m.locate(Vec2(1.5, 0.5)), -1);
}

TEST(MeshCsv, SectionsAndRecords) {
  std::ostringstream os;
  write_mesh_csv(build_structured_mesh(Rectangle{}, 1), os);
  std::istringstream in(os.str());
  std::string line, section;
  int vertices = 0, elements = 0, edges = 0;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      section = line.substr(0, line.find(' ', 2));
      continue;
    }
    if (section == "# vertices") ++vertices;
    if (section == "# elements") ++elements;
    if (section == "# edges") ++edges;
  }
  EXPECT_EQ(vertices, 4);
  EXPECT_EQ(elements, 2);
  EXPECT_EQ(edges, 5);
  EXPECT_NE(os.str().find("\n0,0,1,2,"), std::string::npos);
}

}  // namespace
}  // namespace wg
