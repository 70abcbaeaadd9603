#include "wg/coefficients.hpp"

#include <cmath>
#include <string>

#include "wg/error.hpp"

namespace wg {

bool CoefficientRegion::contains(const Vec2& p) const {
  switch (shape) {
    case Shape::rectangle:
      return bounds.contains(p);
    case Shape::disk:
      return (p - center).squaredNorm() <= radius * radius;
  }
  return false;
}

void validate_kappa(const Eigen::Matrix2d& kappa) {
  if (!kappa.allFinite()) throw ConfigError("kappa has non-finite entries");
  const double scale = kappa.cwiseAbs().maxCoeff();
  if (std::abs(kappa(0, 1) - kappa(1, 0)) > 1e-14 * scale) throw ConfigError("kappa is not symmetric");
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(kappa);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw ConfigError("kappa is not positive definite (smallest eigenvalue " +
                      std::to_string(eig.eigenvalues().minCoeff()) + ")");
  }
}

void CoefficientSpec::validate() const {
  validate_kappa(kappa);
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ConfigError("mu must be a finite nonnegative number");
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& r = regions[i];
    try {
      if (r.kappa) validate_kappa(*r.kappa);
      if (r.mu && (!(*r.mu >= 0.0) || !std::isfinite(*r.mu))) throw ConfigError("mu must be a finite nonnegative number");
      if (r.shape == CoefficientRegion::Shape::disk && !(r.radius > 0.0)) throw ConfigError("disk radius must be positive");
    } catch (const ConfigError& e) {
      throw ConfigError("region " + std::to_string(i) + ": " + e.what());
    }
  }
}

CoefficientField::CoefficientField(const Mesh& mesh, const CoefficientSpec& spec) {
  spec.validate();
  kappa_.reserve(mesh.num_elements());
  mu_.reserve(mesh.num_elements());
  for (const auto& el : mesh.elements()) {
    Eigen::Matrix2d k = spec.kappa;
    double m = spec.mu;
    for (const auto& r : spec.regions) {
      if (!r.contains(el.centroid)) continue;
      if (r.kappa) k = *r.kappa;
      if (r.mu) m = *r.mu;
    }
    kappa_.push_back(0.5 * (k + k.transpose()));
    mu_.push_back(m);
  }
}

}  // namespace wg
