#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sbm/harness.hpp"
#include "sbm/mesh.hpp"
#include "sbm/poisson.hpp"

namespace sbm {

inline constexpr std::uint64_t kDefaultSeed = 42;

struct ProbeReport {
  std::string name;
  bool passed = false;
  bool asserted = true;  // false: outcome recorded only, never a failure
  double measured = 0.0;
  double tolerance = 0.0;
  std::string comparison;  // how measured is judged against tolerance, e.g. "> 0"
  std::string context;
  std::uint64_t seed = kDefaultSeed;
};

/// Minimum of v^T sym(A) v over 100 random unit vectors v, for every
/// (alpha, mesh size) pair. Poisson probes the full matrix, Stokes the
/// velocity block. Alphas below 1 are recorded but not asserted.
std::vector<ProbeReport> run_coercivity_probe(ProblemKind kind, const std::vector<double>& alphas,
                                              const std::vector<double>& mesh_sizes, const LadderParams& params,
                                              std::uint64_t seed = kDefaultSeed, int samples = 100);

/// h_T ||w||^2_E / ||w||^2_T for the P1 function with nodal values w and
/// local edge e of the cell, by exact mass-matrix integrals.
double trace_ratio(const std::array<Vec2, 3>& cell, int local_edge, const std::array<double, 3>& w);

/// Largest h_T ||w||^2_E / ||w||^2_T over boundary cells and random P1
/// functions w, with E the cell's boundary edge. Integrals are exact.
double max_trace_ratio(const Mesh& mesh, std::uint64_t seed = kDefaultSeed, int samples = 1000);

/// One report per mesh plus a stability report asserting the spread of
/// the maxima stays below 10%.
std::vector<ProbeReport> run_trace_probe(const std::vector<Mesh>& ladder, const std::vector<double>& mesh_sizes,
                                         std::uint64_t seed = kDefaultSeed, int samples = 1000);

/// Checks a_h(u, v) - l_h(v) against the Taylor-remainder prediction for 20
/// random P1 test functions v; measured is the worst relative discrepancy.
ProbeReport run_consistency_probe(const PoissonProblem& problem, const PoissonCase& exact,
                                  std::uint64_t seed = kDefaultSeed, int samples = 20, double tolerance = 1e-8);

/// Standard battery on the benchmark ladder: coercivity for both problems,
/// trace stability and consistency for the three Poisson cases.
std::vector<ProbeReport> run_probe_battery(const std::vector<double>& mesh_sizes,
                                           std::uint64_t seed = kDefaultSeed);

bool all_passed(const std::vector<ProbeReport>& reports);

/// "PASS|FAIL|INFO name measured comparison tolerance [context] seed=N".
std::string format_probe_line(const ProbeReport& r);
/// JSON array with one object per probe.
std::string probe_summary_json(const std::vector<ProbeReport>& reports);

}  // namespace sbm
