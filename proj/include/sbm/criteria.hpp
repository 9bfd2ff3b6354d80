#pragma once

#include <string>
#include <vector>

#include "sbm/harness.hpp"

namespace sbm {

/// Published benchmark values on the trapezoid, one entry per level of
/// benchmark_levels().
namespace reference {

const std::vector<double>& benchmark_levels();  // 4e-2, 2e-2, 1e-2, 5e-3
const std::vector<double>& audit_levels();      // 4e-2 ... 1.25e-3

const std::vector<double>& poisson_sbm_l2();
const std::vector<double>& poisson_fitted_l2();
/// Columns strain, velocity, pressure.
const std::vector<std::vector<double>>& stokes_sbm();
const std::vector<std::vector<double>>& stokes_fitted();
/// Violating-edge counts and percentages on audit_levels().
const std::vector<int>& violating_counts();
const std::vector<double>& violating_percentages();

}  // namespace reference

struct CheckResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;  // one line per breached tolerance
  std::vector<std::string> notes;     // informational lines

  void fail(std::string line) {
    passed = false;
    failures.push_back(std::move(line));
  }
};

/// Errors within 5% of the reference at every reference level present and
/// rates in [1.95, 2.05].
CheckResult check_poisson(const ConvergenceTable& sbm);
/// Errors within 10% of the reference; rates strain [0.95, 1.05],
/// velocity [1.9, 2.05], pressure [1.4, 1.6].
CheckResult check_stokes(const ConvergenceTable& sbm);
/// Fitted and SBM errors differ by less than 10% at every level.
CheckResult check_parity(const Comparison& c);
/// Violating percentage strictly positive at every level; the 2-7% band is
/// reported as a note.
CheckResult check_violations(const std::vector<ConvergenceRow>& rows);
/// L2 rates (Poisson, Stokes velocity) at least 1.9.
CheckResult check_l2_rates(const ConvergenceTable& poisson, const ConvergenceTable& stokes);
/// Rate-only checks for ladders off the reference levels.
CheckResult check_rates(const ConvergenceTable& t);

std::string format_check(const CheckResult& r);

}  // namespace sbm
