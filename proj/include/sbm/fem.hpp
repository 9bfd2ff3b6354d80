#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sbm/mesh.hpp"
#include "sbm/vec2.hpp"

namespace sbm {

/// Affine P1 basis on one triangle.
struct P1Element {
  std::array<Vec2, 3> points;
  std::array<Vec2, 3> grads;  // constant per cell
  double area = 0.0;

  /// Barycentric coordinates of x, i.e. the three basis values.
  std::array<double, 3> values(const Vec2& x) const;
  Vec2 map(const std::array<double, 3>& bary) const;
};

/// Throws on a degenerate (zero or negative area) triangle.
P1Element shape_p1(const std::array<Vec2, 3>& points);

/// S_h phi = phi + grad(phi) . d for each of the three basis functions.
std::array<double, 3> eval_shifted(const std::array<double, 3>& values,
                                   const std::array<Vec2, 3>& grads, const Vec2& d);

/// Degree-of-freedom layout: `components` interleaved dofs per vertex,
/// plus an optional trailing Lagrange multiplier.
class DofMap {
 public:
  DofMap() = default;
  DofMap(std::size_t num_vertices, int components, bool multiplier = false);

  int index(int vertex, int component = 0) const {
    return vertex * components_ + component;
  }
  /// Index of the multiplier dof; only valid when has_multiplier().
  int multiplier() const { return static_cast<int>(num_vertices_) * components_; }

  bool has_multiplier() const { return multiplier_; }
  int components() const { return components_; }
  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t size() const { return num_vertices_ * components_ + (multiplier_ ? 1 : 0); }

 private:
  std::size_t num_vertices_ = 0;
  int components_ = 1;
  bool multiplier_ = false;
};

using CsrMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

struct SparseSystem {
  CsrMatrix matrix;
  Eigen::VectorXd rhs;
  DofMap dofs;
};

/// Dense local block scattered into global rows/cols.
struct LocalContribution {
  std::vector<int> rows;
  std::vector<int> cols;
  std::vector<double> matrix;  // row-major rows.size() x cols.size()
  std::vector<double> rhs;     // empty or rows.size()
};

/// Triplet accumulator. finalize() sorts by (row, col, value), sums
/// duplicates and drops exact zeros, so the result does not depend on the
/// order entries were added in.
class Assembler {
 public:
  explicit Assembler(const DofMap& dofs);

  void add(int row, int col, double value);
  void add_rhs(int row, double value);
  void add(const LocalContribution& c);

  SparseSystem finalize() &&;

 private:
  struct Entry {
    int row;
    int col;
    double value;
  };
  DofMap dofs_;
  std::vector<Entry> entries_;
  Eigen::VectorXd rhs_;
};

SparseSystem assemble(std::span<const LocalContribution> contributions, const DofMap& dofs);

enum class SolverKind { Direct, Gmres };

SolverKind parse_solver(const std::string& name);

struct SolveResult {
  Eigen::VectorXd x;
  double relative_residual = 0.0;
  int iterations = 0;
};

/// Sparse LU (with iterative refinement) or Jacobi-preconditioned GMRES.
/// Throws Error on a singular matrix or GMRES non-convergence.
SolveResult solve(const SparseSystem& system, SolverKind kind = SolverKind::Direct);

/// Relative residual |Ax - b| / |b| (absolute when b = 0).
double relative_residual(const CsrMatrix& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b);

}  // namespace sbm
