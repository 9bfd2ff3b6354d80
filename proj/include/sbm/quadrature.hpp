#pragma once

#include <array>
#include <vector>

namespace sbm {

/// Triangle rule on the reference element {(0,0),(1,0),(0,1)}: points in
/// barycentric coordinates, weights summing to the reference area 1/2.
struct CellRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
};

/// Line rule on [0, 1]: abscissae and weights summing to 1.
struct EdgeRule {
  int degree = 0;
  std::vector<double> points;
  std::vector<double> weights;
};

/// Smallest built-in symmetric rule exact for the given degree (max 6).
const CellRule& cell_rule(int degree);

/// n-point Gauss-Legendre rule, 1 <= n <= 5.
const EdgeRule& gauss_rule(int npoints);

}  // namespace sbm
