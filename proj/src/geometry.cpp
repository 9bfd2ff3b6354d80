#include "sbm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <utility>

namespace sbm {

const char* to_string(BoundaryTag tag) {
  return tag == BoundaryTag::Dirichlet ? "dirichlet" : "neumann";
}

DomainGeometry::DomainGeometry(std::vector<Vec2> vertices, std::vector<BoundaryTag> tags)
    : vertices_(std::move(vertices)), tags_(std::move(tags)) {
  if (vertices_.size() < 3) throw Error("geometry: polygon needs at least 3 vertices");
  if (tags_.size() != vertices_.size()) throw Error("geometry: one tag per segment required");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (norm(segment_end(static_cast<int>(i)) - segment_start(static_cast<int>(i))) == 0.0) {
      throw Error("geometry: zero-length segment " + std::to_string(i));
    }
  }
  if (!(area() > 0.0)) throw Error("geometry: polygon must be counterclockwise with positive area");

  // Simple: no two non-adjacent segments intersect.
  const int n = static_cast<int>(vertices_.size());
  const auto orient = [](Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      const Vec2 p1 = segment_start(i), p2 = segment_end(i);
      const Vec2 q1 = segment_start(j), q2 = segment_end(j);
      const double o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
      const double o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
      if (o1 * o2 < 0.0 && o3 * o4 < 0.0) throw Error("geometry: polygon is not simple");
    }
  }
}

Vec2 DomainGeometry::segment_normal(int s) const {
  return normalized(right_perp(segment_end(s) - segment_start(s)));
}

double DomainGeometry::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    a += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  }
  return 0.5 * a;
}

BBox DomainGeometry::bounding_box() const {
  BBox b{vertices_[0], vertices_[0]};
  for (const auto& v : vertices_) {
    b.lo.x = std::min(b.lo.x, v.x);
    b.lo.y = std::min(b.lo.y, v.y);
    b.hi.x = std::max(b.hi.x, v.x);
    b.hi.y = std::max(b.hi.y, v.y);
  }
  return b;
}

double DomainGeometry::signed_distance(const Vec2& x) const {
  const double dist = project(*this, x).distance;
  // Crossing-number parity.
  bool inside = false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[j];
    if ((a.y > x.y) != (b.y > x.y)) {
      const double xc = (b.x - a.x) * (x.y - a.y) / (b.y - a.y) + a.x;
      if (x.x < xc) inside = !inside;
    }
  }
  return inside ? -dist : dist;
}

DomainGeometry DomainGeometry::translated(const Vec2& shift) const {
  std::vector<Vec2> moved = vertices_;
  for (auto& v : moved) v += shift;
  return DomainGeometry(std::move(moved), tags_);
}

namespace {

Vec2 closest_on_segment(const Vec2& a, const Vec2& b, const Vec2& x) {
  const Vec2 ab = b - a;
  const double t = std::clamp(dot(x - a, ab) / dot(ab, ab), 0.0, 1.0);
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  return a + t * ab;
}

}  // namespace

Projection project(const DomainGeometry& geom, const Vec2& x) {
  Projection best;
  best.distance = std::numeric_limits<double>::infinity();
  for (int s = 0; s < static_cast<int>(geom.num_segments()); ++s) {
    const Vec2 p = closest_on_segment(geom.segment_start(s), geom.segment_end(s), x);
    const double dist = norm(p - x);
    if (dist < best.distance) {
      best = {p, s, geom.tags()[s], dist};
    }
  }
  return best;
}

Vec2 boundary_normal(const DomainGeometry& geom, const Projection& p) {
  const int n = static_cast<int>(geom.num_segments());
  const int s = p.segment;
  const double eps = 1e-14 * geom.length_scale();
  if (norm(p.point - geom.segment_start(s)) <= eps) {
    return normalized(geom.segment_normal(s) + geom.segment_normal((s + n - 1) % n));
  }
  if (norm(p.point - geom.segment_end(s)) <= eps) {
    return normalized(geom.segment_normal(s) + geom.segment_normal((s + 1) % n));
  }
  return geom.segment_normal(s);
}

DomainGeometry make_trapezoid(const TrapezoidSpec& spec) {
  if (!(spec.height > 0.0) || !(spec.top_base > 0.0) || !(spec.bottom_base > 0.0)) {
    throw Error("trapezoid: dimensions must be positive");
  }
  const Vec2 o = spec.origin;
  std::vector<Vec2> v{o, o + Vec2{spec.bottom_base, 0.0}, o + Vec2{spec.top_base, spec.height},
                      o + Vec2{0.0, spec.height}};
  const BoundaryTag left = spec.neumann_left_leg ? BoundaryTag::Neumann : BoundaryTag::Dirichlet;
  return DomainGeometry(std::move(v),
                        {BoundaryTag::Dirichlet, BoundaryTag::Dirichlet, BoundaryTag::Dirichlet, left});
}

std::vector<EdgeBoundaryData> build_edge_data(const DomainGeometry& geom, const Mesh& surrogate,
                                              const EdgeRule& quad) {
  if (surrogate.boundary_edges().empty()) throw Error("edge data: surrogate has no boundary");
  const double zero_threshold = kZeroDistanceFactor * geom.length_scale();

  std::vector<EdgeBoundaryData> out;
  out.reserve(surrogate.boundary_edges().size());
  for (const auto& be : surrogate.boundary_edges()) {
    EdgeBoundaryData ed;
    ed.edge = be;
    ed.normal = surrogate.edge_normal(be);
    ed.length = surrogate.edge_length(be);
    ed.h_perp = h_perp(surrogate, be);
    ed.h_T = triangle_metrics(surrogate.cell_points(be.cell)).h_T;
    const auto [ia, ib] = surrogate.edge_vertices(be);
    const Vec2 a = surrogate.vertices()[ia];
    const Vec2 b = surrogate.vertices()[ib];

    int dirichlet_votes = 0;
    for (std::size_t q = 0; q < quad.points.size(); ++q) {
      BoundaryPoint bp;
      bp.x = a + quad.points[q] * (b - a);
      bp.weight = quad.weights[q] * ed.length;
      const Projection proj = project(geom, bp.x);
      bp.segment = proj.segment;
      bp.segment_tag = proj.tag;
      if (proj.distance < zero_threshold) {
        bp.is_zero = true;
      } else {
        bp.is_zero = false;
        bp.d = proj.point - bp.x;
        bp.nu = (1.0 / proj.distance) * bp.d;
      }
      if (proj.tag == BoundaryTag::Dirichlet) ++dirichlet_votes;
      ed.points.push_back(bp);
    }
    const int npts = static_cast<int>(quad.points.size());
    if (dirichlet_votes == npts) {
      ed.tag = BoundaryTag::Dirichlet;
    } else if (dirichlet_votes == 0) {
      ed.tag = BoundaryTag::Neumann;
    } else {
      ed.mixed_projection = true;
      ed.tag = 2 * dirichlet_votes >= npts ? BoundaryTag::Dirichlet : BoundaryTag::Neumann;
      std::clog << "warning: surrogate edge (cell " << be.cell << ", local " << be.local
                << ") projects onto both Dirichlet and Neumann segments; classified as "
                << to_string(ed.tag) << '\n';
    }
    out.push_back(std::move(ed));
  }
  return out;
}

NormalAudit audit_normals(const std::vector<EdgeBoundaryData>& edges) {
  NormalAudit audit;
  audit.total_count = static_cast<int>(edges.size());
  for (const auto& ed : edges) {
    bool violating = false;
    for (const auto& bp : ed.points) {
      if (bp.is_zero) continue;
      if (dot(bp.nu, ed.normal) <= 0.0) violating = true;
      audit.max_d_over_hT = std::max(audit.max_d_over_hT, norm(bp.d) / ed.h_T);
    }
    if (violating) ++audit.violating_count;
  }
  return audit;
}

}  // namespace sbm
