#pragma once

#include <random>

#include <Eigen/Dense>

#include "sbm/geometry.hpp"
#include "sbm/harness.hpp"
#include "sbm/mesh.hpp"

namespace sbm::test {

inline Mesh unit_right_triangle() { return Mesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}); }

/// Trapezoid discretized with the benchmark grid options.
inline Discretization benchmark_level(double h, bool neumann_left_leg = false, GridOptions grid = {}) {
  TrapezoidSpec spec;
  spec.neumann_left_leg = neumann_left_leg;
  return discretize(make_trapezoid(spec), h, grid);
}

inline DomainGeometry unit_square(BoundaryTag tag = BoundaryTag::Dirichlet) {
  return DomainGeometry({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {tag, tag, tag, tag});
}

inline Eigen::MatrixXd dense(const CsrMatrix& a) { return Eigen::MatrixXd(a); }

}  // namespace sbm::test
