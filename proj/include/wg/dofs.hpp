#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "wg/mesh.hpp"

namespace wg {

// Lowest-order (k = 2) reduced space: v0 in P2(T), v_b in P1(e), v_g in P1(e).
inline constexpr int kInteriorDofs = 6;
inline constexpr int kTraceDofs = 2;
inline constexpr int kFluxDofs = 2;
inline constexpr int kEdgeDofs = kTraceDofs + kFluxDofs;
inline constexpr int kLocalDofs = kInteriorDofs + 3 * kEdgeDofs;

/// Local layout: [v0 (6)] [v_b on local edges 0,1,2 (2 each)] [v_g on local edges 0,1,2 (2 each)].
inline constexpr int local_trace_offset(int local_edge) { return kInteriorDofs + kTraceDofs * local_edge; }
inline constexpr int local_flux_offset(int local_edge) {
  return kInteriorDofs + 3 * kTraceDofs + kFluxDofs * local_edge;
}

using LocalVector = Eigen::Matrix<double, kLocalDofs, 1>;
using LocalMatrix = Eigen::Matrix<double, kLocalDofs, kLocalDofs>;

/// Global layout: all element blocks of 6 first, then per edge [v_b (2), v_g (2)].
class DofMap {
 public:
  explicit DofMap(const Mesh& mesh);

  int size() const { return size_; }
  int num_elements() const { return static_cast<int>(element_edges_.size()); }
  int num_edges() const { return num_edges_; }

  int interior_offset(int element) const { return kInteriorDofs * element; }
  int trace_offset(int edge) const { return edge_base_ + kEdgeDofs * edge; }
  int flux_offset(int edge) const { return trace_offset(edge) + kTraceDofs; }

  std::array<int, kLocalDofs> local_dofs(int element) const;

  /// True on the v_b and v_g dofs of boundary edges.
  const std::vector<bool>& boundary_mask() const { return boundary_; }
  int num_boundary_dofs() const { return num_boundary_; }

 private:
  int num_edges_ = 0;
  int edge_base_ = 0;
  int size_ = 0;
  int num_boundary_ = 0;
  std::vector<std::array<int, 3>> element_edges_;
  std::vector<bool> boundary_;
};

struct BoundaryClassification {
  std::vector<bool> edges;
  std::vector<bool> dofs;
};

BoundaryClassification classify_boundary(const Mesh& mesh);

/// v = {v0, v_b, v_g} restricted to one element. `flux` holds v_g in the
/// edge's global-normal convention; the element-outward trace is sigma * flux.
struct LocalWeakFunction {
  Eigen::Matrix<double, kInteriorDofs, 1> interior = Eigen::Matrix<double, kInteriorDofs, 1>::Zero();
  std::array<Eigen::Vector2d, 3> trace{Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero()};
  std::array<Eigen::Vector2d, 3> flux{Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero()};

  LocalVector to_vector() const;
  static LocalWeakFunction from_vector(const LocalVector& v);
};

class WeakFunction {
 public:
  explicit WeakFunction(DofMap map);
  WeakFunction(DofMap map, Eigen::VectorXd coefficients);

  const DofMap& dofs() const { return map_; }
  const Eigen::VectorXd& coefficients() const { return coeffs_; }
  Eigen::VectorXd& coefficients() { return coeffs_; }

  LocalVector local_vector(int element) const;
  LocalWeakFunction local(int element) const { return LocalWeakFunction::from_vector(local_vector(element)); }
  /// Writes every entry of the element's local block (shared edge dofs are overwritten).
  void set_local(int element, const LocalWeakFunction& value);

 private:
  DofMap map_;
  Eigen::VectorXd coeffs_;
};

}  // namespace wg
