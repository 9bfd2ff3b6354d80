#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "sbm/criteria.hpp"
#include "sbm/harness.hpp"

using namespace sbm;

namespace {

ConvergenceTable synthetic_table() {
  ConvergenceTable t;
  t.norms = {"l2"};
  const double h[] = {4e-2, 2e-2, 1e-2};
  const double e[] = {5.12e-3, 1.28e-3, 3.2e-4};
  for (int k = 0; k < 3; ++k) {
    ConvergenceRow r;
    r.mesh_size = h[k];
    r.errors = {e[k]};
    r.rates = {k == 0 ? std::nullopt : std::optional<double>(convergence_rate(h[k - 1], e[k - 1], h[k], e[k]))};
    r.violating = k + 1;
    r.surrogate_edges = 40;
    t.rows.push_back(r);
  }
  return t;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Rates, ExactPowerLaw) {
  EXPECT_DOUBLE_EQ(convergence_rate(0.1, 1e-2, 0.05, 2.5e-3), 2.0);
  EXPECT_NEAR(convergence_rate(4e-2, 5.12e-3, 2e-2, 1.28e-3), 2.0, 1e-12);
  EXPECT_NEAR(convergence_rate(0.3, 7.0, 0.1, 7.0 / 27.0), 3.0, 1e-12);
}

TEST(Rates, InvariantUnderErrorScaling) {
  const double r = convergence_rate(4e-2, 3.1e-3, 2e-2, 8.2e-4);
  EXPECT_NEAR(convergence_rate(4e-2, 17 * 3.1e-3, 2e-2, 17 * 8.2e-4), r, 1e-12);
  EXPECT_NEAR(convergence_rate(4.0, 3.1e-3, 2.0, 8.2e-4), r, 1e-12);
}

TEST(Ladder, NeedsTwoDecreasingLevels) {
  const LadderParams p = default_params(ProblemKind::Poisson);
  try {
    run_ladder(poisson_trig_case(), {4e-2}, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("need >= 2 levels"), std::string::npos);
  }
  EXPECT_THROW(run_ladder(poisson_trig_case(), {2e-2, 4e-2}, p), Error);
  EXPECT_THROW(run_ladder(poisson_trig_case(), {4e-2, 4e-2}, p), Error);
}

TEST(Ladder, PatchCasesReproduceExactly) {
  const ConvergenceTable pt = run_ladder(poisson_affine_case(), {4e-2, 2e-2}, default_params(ProblemKind::Poisson));
  ASSERT_TRUE(pt.complete);
  for (const auto& r : pt.rows) EXPECT_LT(r.errors[0], 1e-10);

  const ConvergenceTable st = run_ladder(stokes_affine_case(), {4e-2, 2e-2}, default_params(ProblemKind::Stokes));
  ASSERT_TRUE(st.complete);
  for (const auto& r : st.rows) {
    for (double e : r.errors) EXPECT_LT(e, 1e-9);
  }
}

TEST(Ladder, RowsCarryAuditAndSizes) {
  const ConvergenceTable t = run_ladder(poisson_trig_case(), {4e-2, 2e-2}, default_params(ProblemKind::Poisson));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_FALSE(t.rows[0].rates[0].has_value());
  ASSERT_TRUE(t.rows[1].rates[0].has_value());
  EXPECT_GT(*t.rows[1].rates[0], 1.9);
  for (const auto& r : t.rows) {
    EXPECT_GT(r.violating, 0);
    EXPECT_GT(r.surrogate_edges, r.violating);
    EXPECT_GT(r.cells, 0u);
    EXPECT_LE(r.residual, 1e-12);
  }
  EXPECT_GT(t.rows[1].cells, 3 * t.rows[0].cells);
}

TEST(Ladder, FailingLevelLeavesPartialTable) {
  const LadderParams p = default_params(ProblemKind::Poisson);
  // Forcing that breaks down partway through the second level.
  auto calls = std::make_shared<long>(0);
  PoissonCase c = poisson_trig_case();
  const auto f = c.forcing;
  c.forcing = [calls, f](const Vec2& x) {
    ++*calls;
    return f(x);
  };
  run_ladder(c, {4e-2, 2e-2}, p);
  const long limit = *calls / 3;
  *calls = 0;
  c.forcing = [calls, f, limit](const Vec2& x) {
    if (++*calls > limit) throw Error("forcing unavailable");
    return f(x);
  };
  const ConvergenceTable partial = run_ladder(c, {4e-2, 2e-2}, p);
  EXPECT_FALSE(partial.complete);
  EXPECT_EQ(partial.rows.size(), 1u);
  EXPECT_NE(partial.failure.find("forcing unavailable"), std::string::npos);
  EXPECT_FALSE(check_poisson(partial).passed);
}

TEST(Ladder, RerunIsByteIdentical) {
  const auto p = default_params(ProblemKind::Stokes);
  const std::string a = to_csv(run_ladder(stokes_polynomial_exp_case(), {4e-2, 2e-2}, p));
  const std::string b = to_csv(run_ladder(stokes_polynomial_exp_case(), {4e-2, 2e-2}, p));
  EXPECT_EQ(a, b);
}

TEST(Report, FormatSci) {
  EXPECT_EQ(format_sci(5.12e-3), "5.12E-03");
  EXPECT_EQ(format_sci(0.0012345), "1.23E-03");
  EXPECT_EQ(format_sci(4e-2), "4.00E-02");
}

TEST(Report, CsvGolden) {
  EXPECT_EQ(to_csv(synthetic_table()),
            "mesh_size,l2_error,l2_rate,violating_edges,surrogate_edges,violating_pct\n"
            "4.00E-02,5.12E-03,-,1,40,2.50\n"
            "2.00E-02,1.28E-03,2.00,2,40,5.00\n"
            "1.00E-02,3.20E-04,2.00,3,40,7.50\n");
}

TEST(Report, MarkdownGolden) {
  EXPECT_EQ(to_markdown(synthetic_table()),
            "| Mesh Size | L2 error | Rate |\n"
            "|---|---|---|\n"
            "| 4.00E-02 | 5.12E-03 | - |\n"
            "| 2.00E-02 | 1.28E-03 | 2.00 |\n"
            "| 1.00E-02 | 3.20E-04 | 2.00 |\n");
}

TEST(Report, EmptyTableRejected) {
  ConvergenceTable t;
  t.norms = {"l2"};
  EXPECT_THROW(to_csv(t), Error);
  EXPECT_THROW(emit_report(t, ReportFormat::Csv, std::filesystem::temp_directory_path(), "x"), Error);
}

TEST(Report, EmitWritesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "sbm_test_emit";
  std::filesystem::remove_all(dir);
  const ConvergenceTable t = synthetic_table();
  const auto csv = emit_report(t, ReportFormat::Csv, dir, "poisson");
  ASSERT_EQ(csv.size(), 1u);
  EXPECT_EQ(slurp(csv[0]), to_csv(t));
  const auto md = emit_report(t, ReportFormat::Markdown, dir, "poisson");
  EXPECT_EQ(slurp(md[0]), to_markdown(t));
  EXPECT_THROW(emit_report(t, ReportFormat::Vtk, dir, "poisson"), Error);
  std::filesystem::remove_all(dir);
}

TEST(Report, ParseOptions) {
  EXPECT_EQ(parse_format("csv"), ReportFormat::Csv);
  EXPECT_EQ(parse_format("md"), ReportFormat::Markdown);
  EXPECT_EQ(parse_format("vtk"), ReportFormat::Vtk);
  EXPECT_THROW(parse_format("xlsx"), Error);
  EXPECT_EQ(parse_problem("stokes"), ProblemKind::Stokes);
  EXPECT_THROW(parse_problem("heat"), Error);
  EXPECT_EQ(parse_orientation("tall"), Orientation::Tall);
  EXPECT_EQ(parse_convention("short-side"), MeshSizeConvention::ShortSide);
}

TEST(Discretize, SqrtAreaConvention) {
  const Discretization d = discretize(make_trapezoid({}), 4e-2, GridOptions{});
  EXPECT_NEAR(d.rect_width * d.rect_height, 16e-4, 1e-15);
  EXPECT_NEAR(d.rect_width / d.rect_height, 5.0, 1e-12);
  GridOptions s;
  s.convention = MeshSizeConvention::ShortSide;
  s.orientation = Orientation::Tall;
  const Discretization t = discretize(make_trapezoid({}), 4e-2, s);
  EXPECT_NEAR(t.rect_width, 4e-2, 1e-15);
  EXPECT_NEAR(t.rect_height, 0.2, 1e-15);
}

TEST(Criteria, ReferenceShapes) {
  EXPECT_EQ(reference::benchmark_levels().size(), 4u);
  EXPECT_EQ(reference::poisson_sbm_l2().size(), 4u);
  EXPECT_EQ(reference::stokes_sbm().size(), 4u);
  EXPECT_EQ(reference::violating_counts().size(), reference::audit_levels().size());
}

TEST(Criteria, PoissonCheckOnReferenceValuesPasses) {
  ConvergenceTable t;
  t.norms = {"l2"};
  const auto& h = reference::benchmark_levels();
  const auto& e = reference::poisson_sbm_l2();
  for (std::size_t k = 0; k < h.size(); ++k) {
    ConvergenceRow r;
    r.mesh_size = h[k];
    r.errors = {e[k]};
    r.rates = {k == 0 ? std::nullopt : std::optional<double>(convergence_rate(h[k - 1], e[k - 1], h[k], e[k]))};
    t.rows.push_back(r);
  }
  EXPECT_TRUE(check_poisson(t).passed) << format_check(check_poisson(t));
  t.rows[2].errors[0] *= 1.2;
  EXPECT_FALSE(check_poisson(t).passed);
}

TEST(Criteria, ViolationsRequirePositive) {
  std::vector<ConvergenceRow> rows(2);
  rows[0].mesh_size = 4e-2;
  rows[0].violating = 1;
  rows[0].surrogate_edges = 30;
  rows[1].mesh_size = 2e-2;
  rows[1].violating = 0;
  rows[1].surrogate_edges = 60;
  EXPECT_FALSE(check_violations(rows).passed);
  rows[1].violating = 2;
  EXPECT_TRUE(check_violations(rows).passed);
}
