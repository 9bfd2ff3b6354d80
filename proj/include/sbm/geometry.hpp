#pragma once

#include <cstddef>
#include <vector>

#include "sbm/mesh.hpp"
#include "sbm/quadrature.hpp"
#include "sbm/vec2.hpp"

namespace sbm {

enum class BoundaryTag { Dirichlet, Neumann };

const char* to_string(BoundaryTag tag);

/// Result of a closest-point query against the true boundary.
struct Projection {
  Vec2 point;
  int segment = -1;
  BoundaryTag tag = BoundaryTag::Dirichlet;
  double distance = 0.0;
};

/// True domain bounded by a simple counterclockwise polygon.
///
/// Segment i runs from vertex i to vertex i+1 (cyclically) and carries
/// tags[i].
class DomainGeometry {
 public:
  DomainGeometry(std::vector<Vec2> vertices, std::vector<BoundaryTag> tags);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<BoundaryTag>& tags() const { return tags_; }
  std::size_t num_segments() const { return vertices_.size(); }

  Vec2 segment_start(int s) const { return vertices_[s]; }
  Vec2 segment_end(int s) const { return vertices_[(s + 1) % vertices_.size()]; }
  /// Outward unit normal of segment s.
  Vec2 segment_normal(int s) const;

  double area() const;
  /// l(Omega) = sqrt(area).
  double length_scale() const { return std::sqrt(area()); }
  BBox bounding_box() const;

  /// Signed distance to the boundary, negative inside.
  double signed_distance(const Vec2& x) const;
  /// x in clos(Omega) within tol.
  bool contains(const Vec2& x, double tol) const { return signed_distance(x) <= tol; }

  /// Translated copy with the same tags.
  DomainGeometry translated(const Vec2& shift) const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<BoundaryTag> tags_;
};

/// Closest point on the boundary; ties go to the lowest segment index.
Projection project(const DomainGeometry& geom, const Vec2& x);

/// True-boundary unit normal at a projected point. At a polygon corner the
/// two adjacent segment normals are averaged.
Vec2 boundary_normal(const DomainGeometry& geom, const Projection& p);

/// Right trapezoid with the left leg on x = 0, bottom base on y = 0 and
/// the slanted side on the right. Segment order: bottom, slant, top, left.
struct TrapezoidSpec {
  double height = 1.0;
  double top_base = 0.6;
  double bottom_base = 0.4;
  bool neumann_left_leg = false;
  Vec2 origin{0.0, 0.0};
};

DomainGeometry make_trapezoid(const TrapezoidSpec& spec);

/// Shifted-boundary data at one edge quadrature point.
struct BoundaryPoint {
  Vec2 x;              // point on the surrogate edge
  double weight = 0;   // physical quadrature weight (includes edge length)
  Vec2 d;              // M_h(x) - x
  Vec2 nu;             // d / |d|, zero when is_zero
  bool is_zero = true; // |d| below the zero threshold; d is then exactly 0
  int segment = -1;    // segment hit by the projection
  BoundaryTag segment_tag = BoundaryTag::Dirichlet;
};

/// Per-surrogate-edge boundary data.
struct EdgeBoundaryData {
  BoundaryEdge edge;
  Vec2 normal;  // outward unit normal of the surrogate edge
  BoundaryTag tag = BoundaryTag::Dirichlet;
  bool mixed_projection = false;
  double length = 0.0;
  double h_perp = 0.0;
  double h_T = 0.0;
  std::vector<BoundaryPoint> points;
};

/// Relative threshold below which |d| is treated as zero.
inline constexpr double kZeroDistanceFactor = 1e-12;

/// Builds boundary data for every surrogate edge. An edge is Dirichlet iff
/// all its quadrature points project onto Dirichlet segments; a mixed edge
/// is settled by majority vote and flagged.
std::vector<EdgeBoundaryData> build_edge_data(const DomainGeometry& geom, const Mesh& surrogate,
                                              const EdgeRule& quad);

struct NormalAudit {
  int violating_count = 0;
  int total_count = 0;
  double max_d_over_hT = 0.0;

  double violating_percentage() const {
    return total_count == 0 ? 0.0 : 100.0 * violating_count / total_count;
  }
};

/// Counts surrogate edges where nu . n_tilde <= 0 at some quadrature point.
/// Zero-distance points never count.
NormalAudit audit_normals(const std::vector<EdgeBoundaryData>& edges);

}  // namespace sbm
