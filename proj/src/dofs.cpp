#include "wg/dofs.hpp"

#include <stdexcept>
#include <utility>

namespace wg {

DofMap::DofMap(const Mesh& mesh)
    : num_edges_(mesh.num_edges()),
      edge_base_(kInteriorDofs * mesh.num_elements()),
      size_(edge_base_ + kEdgeDofs * mesh.num_edges()) {
  element_edges_.reserve(mesh.num_elements());
  for (const auto& el : mesh.elements()) element_edges_.push_back(el.edges);

  boundary_.assign(size_, false);
  for (int e = 0; e < num_edges_; ++e) {
    if (!mesh.edge(e).boundary) continue;
    for (int i = 0; i < kEdgeDofs; ++i) boundary_[trace_offset(e) + i] = true;
    num_boundary_ += kEdgeDofs;
  }
}

std::array<int, kLocalDofs> DofMap::local_dofs(int element) const {
  std::array<int, kLocalDofs> out{};
  for (int i = 0; i < kInteriorDofs; ++i) out[i] = interior_offset(element) + i;
  const auto& edges = element_edges_[element];
  for (int le = 0; le < 3; ++le) {
    for (int i = 0; i < kTraceDofs; ++i) out[local_trace_offset(le) + i] = trace_offset(edges[le]) + i;
    for (int i = 0; i < kFluxDofs; ++i) out[local_flux_offset(le) + i] = flux_offset(edges[le]) + i;
  }
  return out;
}

BoundaryClassification classify_boundary(const Mesh& mesh) {
  BoundaryClassification out;
  out.edges = classify_edges(mesh).boundary;
  out.dofs = DofMap(mesh).boundary_mask();
  return out;
}

LocalVector LocalWeakFunction::to_vector() const {
  LocalVector v;
  v.head<kInteriorDofs>() = interior;
  for (int le = 0; le < 3; ++le) {
    v.segment<kTraceDofs>(local_trace_offset(le)) = trace[le];
    v.segment<kFluxDofs>(local_flux_offset(le)) = flux[le];
  }
  return v;
}

LocalWeakFunction LocalWeakFunction::from_vector(const LocalVector& v) {
  LocalWeakFunction out;
  out.interior = v.head<kInteriorDofs>();
  for (int le = 0; le < 3; ++le) {
    out.trace[le] = v.segment<kTraceDofs>(local_trace_offset(le));
    out.flux[le] = v.segment<kFluxDofs>(local_flux_offset(le));
  }
  return out;
}

WeakFunction::WeakFunction(DofMap map) : map_(std::move(map)), coeffs_(Eigen::VectorXd::Zero(map_.size())) {}

WeakFunction::WeakFunction(DofMap map, Eigen::VectorXd coefficients)
    : map_(std::move(map)), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != map_.size()) throw std::invalid_argument("WeakFunction: coefficient vector size mismatch");
}

LocalVector WeakFunction::local_vector(int element) const {
  const auto dofs = map_.local_dofs(element);
  LocalVector v;
  for (int i = 0; i < kLocalDofs; ++i) v[i] = coeffs_[dofs[i]];
  return v;
}

void WeakFunction::set_local(int element, const LocalWeakFunction& value) {
  const auto dofs = map_.local_dofs(element);
  const LocalVector v = value.to_vector();
  for (int i = 0; i < kLocalDofs; ++i) coeffs_[dofs[i]] = v[i];
}

}  // namespace wg
