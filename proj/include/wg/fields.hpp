#pragma once

#include <functional>

#include "wg/mesh.hpp"

namespace wg {

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

/// Exact solution used for projections and error reporting.
struct ExactSolution {
  ScalarField value;
  VectorField gradient;
};

}  // namespace wg
