#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "sbm/vec2.hpp"

namespace sbm {

class DomainGeometry;

struct BBox {
  Vec2 lo;
  Vec2 hi;

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  /// Characteristic length sqrt(area).
  double length_scale() const { return std::sqrt(width() * height()); }
};

/// Which way the long side of each background rectangle points.
enum class Orientation { Tall, Wide };

/// A boundary edge identified by its owning cell and local edge index.
/// Local edge e joins cells[cell][e] and cells[cell][(e + 1) % 3].
struct BoundaryEdge {
  int cell = -1;
  int local = -1;
};

/// Conforming triangulation with counterclockwise cells.
///
/// Construction validates orientation and conformity and derives the
/// boundary edge list and the vertex-to-cell adjacency.
class Mesh {
 public:
  Mesh() = default;
  Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> cells);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& cells() const { return cells_; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_cells() const { return cells_.size(); }

  /// Cells touching vertex v, ascending.
  std::span<const int> vertex_cells(int v) const;

  std::array<Vec2, 3> cell_points(int c) const;
  Vec2 centroid(int c) const;
  double area(int c) const;
  double total_area() const;

  /// Vertex indices of a boundary edge, in counterclockwise order.
  std::array<int, 2> edge_vertices(const BoundaryEdge& e) const;
  /// Outward unit normal of a boundary edge.
  Vec2 edge_normal(const BoundaryEdge& e) const;
  double edge_length(const BoundaryEdge& e) const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<BoundaryEdge> boundary_edges_;
  std::vector<int> vc_offsets_;
  std::vector<int> vc_cells_;
};

/// Size metrics of one cell.
struct ElementMetrics {
  double h_T = 0.0;    // circumscribed diameter
  double h_T_i = 0.0;  // inscribed diameter
  double h_tau = 0.0;  // sqrt(h_T * h_T_i)
  double area = 0.0;
};

/// Builds a grid of nx x ny rectangles over bbox, each split by both
/// diagonals into four equal-area triangles meeting at a center vertex.
///
/// Vertex order: the (nx+1)(ny+1) rectangle corners row-major (x fastest),
/// followed by the nx*ny centers row-major. Cells per rectangle are emitted
/// bottom, right, top, left.
Mesh build_rect_grid(const BBox& bbox, int nx, int ny);

/// Same construction parameterized by rectangle shape: n_long rectangles
/// along the bbox side parallel to the rectangles' long side, each with
/// long/short ratio `aspect`. The other count must come out integral.
Mesh build_background_grid(const BBox& bbox, int n_long, double aspect, Orientation orientation);

/// Cells whose three vertices and centroid lie in clos(geom) within tol.
/// Unused vertices are dropped; kept vertices retain their relative order.
Mesh extract_surrogate(const Mesh& mesh, const DomainGeometry& geom, double tol);

std::vector<ElementMetrics> compute_metrics(const Mesh& mesh);
ElementMetrics triangle_metrics(const std::array<Vec2, 3>& p);

/// area(T) / length(E) for a boundary edge.
double h_perp(const Mesh& mesh, const BoundaryEdge& e);

/// Maximum circumscribed diameter over all cells.
double max_h(const Mesh& mesh);

}  // namespace sbm
