#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sbm/geometry.hpp"
#include "sbm/quadrature.hpp"
#include "support.hpp"

using namespace sbm;

namespace {

// Brute-force closest point over densely sampled boundary points.
Vec2 sampled_closest(const DomainGeometry& g, const Vec2& x, int per_segment = 20000) {
  Vec2 best;
  double best_d = INFINITY;
  for (std::size_t s = 0; s < g.num_segments(); ++s) {
    const Vec2 a = g.segment_start(static_cast<int>(s)), b = g.segment_end(static_cast<int>(s));
    for (int k = 0; k <= per_segment; ++k) {
      const Vec2 p = a + (static_cast<double>(k) / per_segment) * (b - a);
      const double d = norm(p - x);
      if (d < best_d) {
        best_d = d;
        best = p;
      }
    }
  }
  return best;
}

// Signed offset of p from the line through segment s.
double segment_offset(const DomainGeometry& g, int s, const Vec2& p) {
  return dot(p - g.segment_start(s), g.segment_normal(s));
}

}  // namespace

TEST(Geometry, TrapezoidLayout) {
  const DomainGeometry g = make_trapezoid({});
  ASSERT_EQ(g.num_segments(), 4u);
  EXPECT_EQ(g.vertices()[0], (Vec2{0, 0}));
  EXPECT_EQ(g.vertices()[1], (Vec2{0.4, 0}));
  EXPECT_EQ(g.vertices()[2], (Vec2{0.6, 1}));
  EXPECT_EQ(g.vertices()[3], (Vec2{0, 1}));
  EXPECT_NEAR(g.area(), 0.5, 1e-15);
  TrapezoidSpec spec;
  spec.neumann_left_leg = true;
  EXPECT_EQ(make_trapezoid(spec).tags()[3], BoundaryTag::Neumann);
}

TEST(Geometry, Validation) {
  const auto D = BoundaryTag::Dirichlet;
  EXPECT_THROW(DomainGeometry({{0, 0}, {1, 0}}, {D, D}), Error);
  EXPECT_THROW(DomainGeometry({{0, 0}, {1, 0}, {0, 1}}, {D, D}), Error);
  EXPECT_THROW(DomainGeometry({{0, 0}, {0, 1}, {1, 0}}, {D, D, D}), Error);  // clockwise
  EXPECT_THROW(DomainGeometry({{0, 0}, {1, 1}, {1, 0}, {0, 1}}, {D, D, D, D}), Error);
  EXPECT_THROW(DomainGeometry({{0, 0}, {0, 0}, {1, 0}, {0, 1}}, {D, D, D, D}), Error);
}

TEST(Geometry, InsideConsistentWithWinding) {
  const DomainGeometry g = make_trapezoid({});
  EXPECT_TRUE(g.contains({0.2, 0.5}, 0.0));
  EXPECT_FALSE(g.contains({0.55, 0.2}, 0.0));
  EXPECT_TRUE(g.contains({0.0, 0.5}, 1e-12));
  EXPECT_LT(g.signed_distance({0.1, 0.5}), 0.0);
  EXPECT_NEAR(g.signed_distance({-0.1, 0.5}), 0.1, 1e-15);
}

TEST(Project, FixedPointOnBoundary) {
  const DomainGeometry g = make_trapezoid({});
  const Projection p = project(g, {0.2, 0.0});
  EXPECT_EQ(p.point, (Vec2{0.2, 0.0}));
  EXPECT_EQ(p.distance, 0.0);
}

TEST(Project, BelowBottomBase) {
  const Projection p = project(make_trapezoid({}), {0.2, -0.1});
  EXPECT_NEAR(p.point.x, 0.2, 1e-15);
  EXPECT_NEAR(p.point.y, 0.0, 1e-15);
  EXPECT_NEAR(p.distance, 0.1, 1e-15);
  EXPECT_EQ(p.segment, 0);
}

TEST(Project, CornerTieGoesToLowestSegment) {
  TrapezoidSpec spec;
  spec.neumann_left_leg = true;
  const DomainGeometry g = make_trapezoid(spec);
  // Outside the bottom-left corner on the bisector: equidistant from the
  // bottom (0) and left (3) segments.
  const Vec2 x{-0.1, -0.1};
  const Projection p = project(g, x);
  const Vec2 oracle = sampled_closest(g, x);
  EXPECT_NEAR(p.point.x, oracle.x, 1e-12);
  EXPECT_NEAR(p.point.y, oracle.y, 1e-12);
  EXPECT_EQ(p.point, (Vec2{0, 0}));
  EXPECT_EQ(p.segment, 0);
  EXPECT_EQ(p.tag, BoundaryTag::Dirichlet);
}

TEST(Project, MatchesSampledOracle) {
  const DomainGeometry g = make_trapezoid({});
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ux(-0.3, 0.9), uy(-0.3, 1.3);
  for (int k = 0; k < 50; ++k) {
    const Vec2 x{ux(rng), uy(rng)};
    const Projection p = project(g, x);
    const Vec2 o = sampled_closest(g, x, 4000);
    EXPECT_LE(p.distance, norm(o - x) + 1e-12);
    EXPECT_NEAR(p.distance, norm(o - x), 2e-4);
  }
}

TEST(Project, Idempotent) {
  const DomainGeometry g = make_trapezoid({});
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int k = 0; k < 200; ++k) {
    const Vec2 p1 = project(g, {u(rng), u(rng)}).point;
    const Vec2 p2 = project(g, p1).point;
    EXPECT_NEAR(norm(p2 - p1), 0.0, 1e-12);
  }
}

TEST(BoundaryNormal, CornerAveragesAdjacentSegments) {
  const DomainGeometry g = test::unit_square();
  const Vec2 n = boundary_normal(g, project(g, {-1, -1}));
  EXPECT_NEAR(n.x, -std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(n.y, -std::sqrt(0.5), 1e-15);
  const Vec2 m = boundary_normal(g, project(g, {0.5, -1}));
  EXPECT_EQ(m, (Vec2{0, -1}));
}

TEST(EdgeData, FittedEdgesHaveZeroDistance) {
  const Mesh bg = build_rect_grid({{0, 0}, {1, 1}}, 4, 4);
  const DomainGeometry g = test::unit_square();
  const auto edges = build_edge_data(g, extract_surrogate(bg, g, 1e-12), gauss_rule(3));
  EXPECT_EQ(edges.size(), 16u);
  for (const auto& ed : edges) {
    EXPECT_EQ(ed.tag, BoundaryTag::Dirichlet);
    for (const auto& bp : ed.points) {
      EXPECT_TRUE(bp.is_zero);
      EXPECT_EQ(bp.d, (Vec2{}));
    }
  }
  EXPECT_EQ(audit_normals(edges).violating_count, 0);
}

TEST(EdgeData, NeumannLeftLegBodyFitted) {
  const auto d = test::benchmark_level(4e-2, true);
  int neumann = 0;
  for (const auto& ed : d.edges) {
    if (ed.tag != BoundaryTag::Neumann) continue;
    ++neumann;
    for (const auto& bp : ed.points) {
      EXPECT_TRUE(bp.is_zero);
      EXPECT_NEAR(bp.x.x, 0.0, 1e-15);
    }
  }
  EXPECT_GT(neumann, 0);
}

TEST(EdgeData, RecordsLandOnBoundary) {
  const DomainGeometry g = make_trapezoid({});
  const auto d = test::benchmark_level(2e-2);
  const double l = g.length_scale();
  bool slant_seen = false;
  for (const auto& ed : d.edges) {
    EXPECT_NEAR(norm(ed.normal), 1.0, 1e-14);
    EXPECT_GT(ed.points.size(), 0u);
    double w = 0.0;
    for (const auto& bp : ed.points) {
      w += bp.weight;
      const Vec2 y = bp.x + bp.d;
      EXPECT_LT(std::abs(segment_offset(g, bp.segment, y)), 1e-12 * l);
      EXPECT_LE(norm(bp.d), project(g, bp.x).distance + 1e-12);
      if (bp.is_zero) {
        EXPECT_EQ(bp.d, (Vec2{}));
      } else {
        EXPECT_NEAR(norm(bp.nu), 1.0, 1e-14);
      }
      if (bp.segment == 1 && !bp.is_zero) {
        slant_seen = true;
        EXPECT_GT(dot(bp.d, g.segment_normal(1)), 0.0);
      }
    }
    EXPECT_NEAR(w, ed.length, 1e-14);
  }
  EXPECT_TRUE(slant_seen);
}

TEST(Audit, SyntheticOpposingNormal) {
  EdgeBoundaryData ed;
  ed.normal = {1, 0};
  ed.h_T = 1.0;
  BoundaryPoint bp;
  bp.d = {-0.1, 0};
  bp.nu = {-1, 0};
  bp.is_zero = false;
  ed.points = {bp};
  const NormalAudit a = audit_normals({ed});
  EXPECT_EQ(a.violating_count, 1);
  EXPECT_EQ(a.total_count, 1);
  EXPECT_DOUBLE_EQ(a.violating_percentage(), 100.0);
  EXPECT_NEAR(a.max_d_over_hT, 0.1, 1e-15);
}

TEST(Audit, BenchmarkLadderViolates) {
  for (double h : {4e-2, 2e-2, 1e-2, 5e-3}) {
    const auto d = test::benchmark_level(h);
    EXPECT_GT(d.audit.violating_count, 0) << "h=" << h;
    EXPECT_EQ(d.audit.total_count, static_cast<int>(d.edges.size()));
  }
}
