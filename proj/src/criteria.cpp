#include "sbm/criteria.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

namespace sbm {

namespace reference {

const std::vector<double>& benchmark_levels() {
  static const std::vector<double> v{4e-2, 2e-2, 1e-2, 5e-3};
  return v;
}

const std::vector<double>& audit_levels() {
  static const std::vector<double> v{4e-2, 2e-2, 1e-2, 5e-3, 2.5e-3, 1.25e-3};
  return v;
}

const std::vector<double>& poisson_sbm_l2() {
  static const std::vector<double> v{5.12e-3, 1.28e-3, 3.19e-4, 7.96e-5};
  return v;
}

const std::vector<double>& poisson_fitted_l2() {
  static const std::vector<double> v{4.95e-3, 1.26e-3, 3.16e-4, 7.92e-5};
  return v;
}

const std::vector<std::vector<double>>& stokes_sbm() {
  static const std::vector<std::vector<double>> v{
      {1.34e-2, 7.93e-4, 9.81e-3}, {6.57e-3, 2.08e-4, 3.49e-3}, {3.23e-3, 5.36e-5, 1.25e-3}, {1.60e-3, 1.36e-5, 4.37e-4}};
  return v;
}

const std::vector<std::vector<double>>& stokes_fitted() {
  static const std::vector<std::vector<double>> v{
      {1.39e-2, 6.01e-4, 9.87e-3}, {6.68e-3, 1.62e-4, 3.52e-3}, {3.26e-3, 4.21e-5, 1.24e-3}, {1.61e-3, 1.07e-5, 4.35e-4}};
  return v;
}

const std::vector<int>& violating_counts() {
  static const std::vector<int> v{1, 1, 5, 9, 23, 38};
  return v;
}

const std::vector<double>& violating_percentages() {
  static const std::vector<double> v{4.35, 2.33, 5.43, 5.06, 6.35, 5.38};
  return v;
}

}  // namespace reference

namespace {

std::optional<std::size_t> reference_index(double h) {
  const auto& levels = reference::benchmark_levels();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (std::abs(h - levels[k]) <= 1e-9 * levels[k]) return k;
  }
  return std::nullopt;
}

std::string fmt(const char* f, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void require_complete(const ConvergenceTable& t, CheckResult& r) {
  if (!t.complete) r.fail("ladder incomplete: " + t.failure);
  if (t.rows.size() < 2) r.fail("fewer than 2 levels");
}

void check_magnitude(CheckResult& r, const std::string& label, double h, double value, double ref, double tol) {
  const double rel = value / ref - 1.0;
  const std::string line = label + " h=" + format_sci(h) + ": " + format_sci(value) + " vs " + format_sci(ref) +
                           " (" + fmt("%+.1f", 100.0 * rel) + "%, tol " + fmt("%.0f", 100.0 * tol) + "%)";
  if (std::abs(rel) <= tol) {
    r.notes.push_back(line);
  } else {
    r.fail(line);
  }
}

void check_band(CheckResult& r, const std::string& label, const ConvergenceTable& t, std::size_t j, double lo,
                double hi) {
  for (const auto& row : t.rows) {
    if (!row.rates[j]) continue;
    const double rate = *row.rates[j];
    const std::string line = label + " rate h=" + format_sci(row.mesh_size) + ": " + fmt("%.3f", rate) + " in [" +
                             fmt("%.2f", lo) + ", " + fmt("%.2f", hi) + "]";
    if (rate >= lo && rate <= hi) {
      r.notes.push_back(line);
    } else {
      r.fail(line);
    }
  }
}

}  // namespace

CheckResult check_poisson(const ConvergenceTable& sbm) {
  CheckResult r;
  r.name = "poisson convergence";
  require_complete(sbm, r);
  for (const auto& row : sbm.rows) {
    if (const auto k = reference_index(row.mesh_size)) {
      check_magnitude(r, "l2", row.mesh_size, row.errors[0], reference::poisson_sbm_l2()[*k], 0.05);
    }
  }
  check_band(r, "l2", sbm, 0, 1.95, 2.05);
  return r;
}

CheckResult check_stokes(const ConvergenceTable& sbm) {
  CheckResult r;
  r.name = "stokes convergence";
  require_complete(sbm, r);
  for (const auto& row : sbm.rows) {
    if (const auto k = reference_index(row.mesh_size)) {
      for (std::size_t j = 0; j < 3; ++j) {
        check_magnitude(r, sbm.norms[j], row.mesh_size, row.errors[j], reference::stokes_sbm()[*k][j], 0.10);
      }
    }
  }
  check_band(r, "strain", sbm, 0, 0.95, 1.05);
  check_band(r, "velocity", sbm, 1, 1.9, 2.05);
  check_band(r, "pressure", sbm, 2, 1.4, 1.6);
  return r;
}

CheckResult check_parity(const Comparison& c) {
  CheckResult r;
  r.name = std::string("fitted/sbm parity ") + to_string(c.sbm.problem);
  require_complete(c.sbm, r);
  require_complete(c.fitted, r);
  const std::size_t n = std::min(c.sbm.rows.size(), c.fitted.rows.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto& s = c.sbm.rows[k];
    const auto& f = c.fitted.rows[k];
    for (std::size_t j = 0; j < s.errors.size(); ++j) {
      const double rel = std::abs(f.errors[j] - s.errors[j]) / s.errors[j];
      const std::string line = c.sbm.norms[j] + " h=" + format_sci(s.mesh_size) + ": fitted " +
                               format_sci(f.errors[j]) + " vs sbm " + format_sci(s.errors[j]) + " (" +
                               fmt("%.1f", 100.0 * rel) + "%, tol 10%)";
      if (rel < 0.10) {
        r.notes.push_back(line);
      } else {
        r.fail(line);
      }
    }
  }
  return r;
}

CheckResult check_violations(const std::vector<ConvergenceRow>& rows) {
  CheckResult r;
  r.name = "violation robustness";
  if (rows.empty()) r.fail("no levels");
  for (const auto& row : rows) {
    const double pct = row.violating_percentage();
    const std::string line = "h=" + format_sci(row.mesh_size) + ": " + std::to_string(row.violating) + "/" +
                             std::to_string(row.surrogate_edges) + " = " + fmt("%.2f", pct) + "%";
    if (pct > 0.0) {
      r.notes.push_back(line + (pct >= 2.0 && pct <= 7.0 ? " (in 2-7% band)" : " (outside 2-7% band)"));
    } else {
      r.fail(line);
    }
  }
  return r;
}

CheckResult check_l2_rates(const ConvergenceTable& poisson, const ConvergenceTable& stokes) {
  CheckResult r;
  r.name = "l2 rates above 3/2";
  require_complete(poisson, r);
  require_complete(stokes, r);
  check_band(r, "poisson l2", poisson, 0, 1.9, INFINITY);
  check_band(r, "stokes velocity", stokes, 1, 1.9, INFINITY);
  return r;
}

CheckResult check_rates(const ConvergenceTable& t) {
  CheckResult r;
  r.name = std::string(to_string(t.problem)) + " rates";
  require_complete(t, r);
  if (t.problem == ProblemKind::Poisson) {
    check_band(r, "l2", t, 0, 1.95, 2.05);
  } else {
    check_band(r, "strain", t, 0, 0.95, 1.05);
    check_band(r, "velocity", t, 1, 1.9, 2.05);
    check_band(r, "pressure", t, 2, 1.4, 1.6);
  }
  return r;
}

std::string format_check(const CheckResult& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS " : "FAIL ") << r.name << '\n';
  for (const auto& f : r.failures) out << "  breach: " << f << '\n';
  for (const auto& n : r.notes) out << "  ok: " << n << '\n';
  return out.str();
}

}  // namespace sbm
