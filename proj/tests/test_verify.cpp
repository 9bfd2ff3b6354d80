#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "sbm/quadrature.hpp"
#include "sbm/verify.hpp"
#include "support.hpp"

using namespace sbm;

namespace {

// h_T ||w||_E^2 / ||w||_T^2 by quadrature, independent of the mass formulas.
double quadrature_ratio(const std::array<Vec2, 3>& p, int local_edge, const std::array<double, 3>& w) {
  const P1Element e = shape_p1(p);
  const auto value = [&](const Vec2& x) {
    const auto v = e.values(x);
    return w[0] * v[0] + w[1] * v[1] + w[2] * v[2];
  };
  double cell = 0.0;
  const CellRule& cr = cell_rule(2);
  for (std::size_t q = 0; q < cr.points.size(); ++q) cell += cr.weights[q] * 2.0 * e.area * std::pow(value(e.map(cr.points[q])), 2);
  const Vec2 a = p[local_edge], b = p[(local_edge + 1) % 3];
  double edge = 0.0;
  const EdgeRule& er = gauss_rule(2);
  for (std::size_t q = 0; q < er.points.size(); ++q) {
    edge += er.weights[q] * norm(b - a) * std::pow(value(a + er.points[q] * (b - a)), 2);
  }
  return triangle_metrics(p).h_T * edge / cell;
}

}  // namespace

TEST(Trace, RightTriangleClosedForm) {
  const std::array<Vec2, 3> t{Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
  // Constant function on the hypotenuse: sqrt(2) * sqrt(2) / (1/2).
  EXPECT_NEAR(trace_ratio(t, 1, {1, 1, 1}), 4.0, 1e-14);
  EXPECT_NEAR(trace_ratio(t, 0, {1, 1, 1}), 2.0 * std::sqrt(2.0), 1e-14);
  // Hat function of vertex 0 on a leg: 2 h_T L / A.
  EXPECT_NEAR(trace_ratio(t, 0, {1, 0, 0}), 4.0 * std::sqrt(2.0), 1e-14);
}

TEST(Trace, MatchesQuadratureOracle) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 50; ++k) {
    const std::array<Vec2, 3> p{Vec2{u(rng), u(rng)}, Vec2{u(rng) + 3, u(rng)}, Vec2{u(rng), u(rng) + 3}};
    const std::array<double, 3> w{u(rng), u(rng), u(rng)};
    const int e = k % 3;
    const double r = trace_ratio(p, e, w);
    EXPECT_NEAR(r, quadrature_ratio(p, e, w), 1e-10 * r);
  }
}

TEST(Trace, BenchmarkLadderStable) {
  std::vector<Mesh> ladder;
  const std::vector<double> sizes{4e-2, 2e-2, 1e-2};
  for (double h : sizes) ladder.push_back(test::benchmark_level(h).surrogate);
  const auto reports = run_trace_probe(ladder, sizes, kDefaultSeed, 200);
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_TRUE(all_passed(reports));
  for (std::size_t k = 0; k < 3; ++k) EXPECT_GT(reports[k].measured, 0.0);
}

TEST(Coercivity, PositiveOnBenchmark) {
  const auto reports =
      run_coercivity_probe(ProblemKind::Poisson, {10.0, 1e-6}, {4e-2}, default_params(ProblemKind::Poisson));
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_TRUE(reports[0].asserted);
  EXPECT_TRUE(reports[0].passed);
  EXPECT_GT(reports[0].measured, 0.0);
  EXPECT_FALSE(reports[1].asserted);
  EXPECT_TRUE(all_passed(reports));
}

TEST(Consistency, ProbePasses) {
  const auto d = test::benchmark_level(4e-2, false, GridOptions{.edge_points = 5});
  const PoissonCase c = poisson_trig_case();
  const ProbeReport r = run_consistency_probe({d.surrogate, d.edges, c.forcing, c.u.value, 10.0}, c);
  EXPECT_TRUE(r.passed) << format_probe_line(r);
  EXPECT_LE(r.measured, 1e-8);
}

TEST(Probes, DeterministicForSeed) {
  const std::vector<double> sizes{4e-2, 2e-2};
  const auto a = run_probe_battery(sizes, 7);
  const auto b = run_probe_battery(sizes, 7);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(format_probe_line(a[k]), format_probe_line(b[k]));
  EXPECT_TRUE(all_passed(a));
}

TEST(Probes, ReportFormats) {
  ProbeReport r;
  r.name = "coercivity";
  r.passed = true;
  r.measured = 0.5;
  r.tolerance = 0.0;
  r.comparison = ">";
  const std::string line = format_probe_line(r);
  EXPECT_EQ(line.rfind("PASS coercivity", 0), 0u);
  EXPECT_NE(line.find("seed=42"), std::string::npos);
  r.asserted = false;
  EXPECT_EQ(format_probe_line(r).rfind("INFO", 0), 0u);
  r.asserted = true;
  r.passed = false;
  EXPECT_EQ(format_probe_line(r).rfind("FAIL", 0), 0u);
  EXPECT_FALSE(all_passed({r}));

  const auto j = nlohmann::json::parse(probe_summary_json({r}));
  EXPECT_FALSE(j.at("all_passed").get<bool>());
  ASSERT_EQ(j.at("probes").size(), 1u);
  EXPECT_EQ(j.at("probes")[0].at("name"), "coercivity");
}
