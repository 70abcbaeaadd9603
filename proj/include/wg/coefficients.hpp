#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "wg/mesh.hpp"

namespace wg {

/// Region overriding kappa and/or mu. Later regions take precedence.
struct CoefficientRegion {
  enum class Shape { rectangle, disk };

  Shape shape = Shape::rectangle;
  Rectangle bounds;      // rectangle
  Vec2 center = Vec2::Zero();  // disk
  double radius = 0.0;   // disk
  std::optional<Eigen::Matrix2d> kappa;
  std::optional<double> mu;

  bool contains(const Vec2& p) const;
};

struct CoefficientSpec {
  Eigen::Matrix2d kappa = Eigen::Matrix2d::Identity();
  double mu = 0.0;
  std::vector<CoefficientRegion> regions;

  static CoefficientSpec uniform(const Eigen::Matrix2d& kappa, double mu) { return {kappa, mu, {}}; }

  /// Throws ConfigError on a non-SPD kappa or a negative mu anywhere.
  void validate() const;
};

/// Throws ConfigError unless kappa is symmetric with positive eigenvalues.
void validate_kappa(const Eigen::Matrix2d& kappa);

/// Piecewise-constant kappa_T, mu_T sampled at element centroids.
class CoefficientField {
 public:
  CoefficientField(const Mesh& mesh, const CoefficientSpec& spec);

  const Eigen::Matrix2d& kappa(int element) const { return kappa_[element]; }
  double mu(int element) const { return mu_[element]; }
  int size() const { return static_cast<int>(mu_.size()); }

 private:
  std::vector<Eigen::Matrix2d> kappa_;
  std::vector<double> mu_;
};

}  // namespace wg
