#pragma once

#include <functional>

#include "sbm/vec2.hpp"

namespace sbm {

/// Scalar field with analytic gradient and Hessian.
struct ScalarField {
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> grad;
  std::function<Mat2(const Vec2&)> hessian;
};

/// Vector field with analytic Jacobian (row i = gradient of component i).
struct VectorField {
  std::function<Vec2(const Vec2&)> value;
  std::function<Mat2(const Vec2&)> jacobian;
};

}  // namespace sbm
