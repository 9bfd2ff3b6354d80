#include "sbm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sbm/stokes.hpp"

namespace sbm {

namespace {

Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

std::string level_context(double h) { return "h=" + format_sci(h); }

}  // namespace

std::vector<ProbeReport> run_coercivity_probe(ProblemKind kind, const std::vector<double>& alphas,
                                              const std::vector<double>& mesh_sizes, const LadderParams& params,
                                              std::uint64_t seed, int samples) {
  std::vector<ProbeReport> reports;
  TrapezoidSpec spec = params.trapezoid;
  spec.neumann_left_leg = kind == ProblemKind::Stokes && params.neumann_left_leg;
  const DomainGeometry geom = make_trapezoid(spec);
  for (const double h : mesh_sizes) {
    const Discretization dz = discretize(geom, h, params.grid);
    for (const double alpha : alphas) {
      Eigen::SparseMatrix<double> a;
      if (kind == ProblemKind::Poisson) {
        const auto zero = [](const Vec2&) { return 0.0; };
        a = assemble_poisson(PoissonProblem{dz.surrogate, dz.edges, zero, zero, alpha}).matrix;
      } else {
        StokesProblem p;
        p.mesh = dz.surrogate;
        p.edges = dz.edges;
        p.mu = params.mu;
        p.alpha = alpha;
        p.gamma = params.gamma;
        p.forcing = p.dirichlet = p.traction = [](const Vec2&) { return Vec2{}; };
        p.gauge = spec.neumann_left_leg ? PressureGauge::Neumann : PressureGauge::ZeroMean;
        p.stabilization_length = params.stabilization;
        a = velocity_block(assemble_stokes(p));
      }
      std::mt19937_64 rng(seed);
      double worst = std::numeric_limits<double>::infinity();
      for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd v = random_vector(rng, a.cols());
        v.normalize();
        worst = std::min(worst, v.dot(a * v));
      }
      ProbeReport r;
      r.name = std::string("coercivity/") + to_string(kind);
      r.measured = worst;
      r.tolerance = 0.0;
      r.comparison = ">";
      r.passed = worst > 0.0;
      r.asserted = alpha >= 1.0;
      r.seed = seed;
      std::ostringstream ctx;
      ctx << level_context(h) << " alpha=" << alpha << " samples=" << samples;
      r.context = ctx.str();
      reports.push_back(r);
    }
  }
  return reports;
}

double trace_ratio(const std::array<Vec2, 3>& cell, int local_edge, const std::array<double, 3>& w) {
  const ElementMetrics m = triangle_metrics(cell);
  const double sum = w[0] + w[1] + w[2];
  const double mass = m.area / 12.0 * (w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + sum * sum);
  const int i = local_edge, j = (local_edge + 1) % 3;
  const double len = norm(cell[j] - cell[i]);
  const double edge = len / 3.0 * (w[i] * w[i] + w[i] * w[j] + w[j] * w[j]);
  return m.h_T * edge / mass;
}

double max_trace_ratio(const Mesh& mesh, std::uint64_t seed, int samples) {
  // Boundary edges grouped by owning cell.
  std::vector<std::vector<int>> by_cell(mesh.num_cells());
  for (const auto& e : mesh.boundary_edges()) by_cell[e.cell].push_back(e.local);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (by_cell[c].empty()) continue;
    const auto pts = mesh.cell_points(static_cast<int>(c));
    const double area = mesh.area(static_cast<int>(c));
    for (int s = 0; s < samples; ++s) {
      const std::array<double, 3> w{normal(rng), normal(rng), normal(rng)};
      const double sum = w[0] + w[1] + w[2];
      if (!(area / 12.0 * (w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + sum * sum) > 1e-12)) continue;
      double ratio = 0.0;
      for (const int e : by_cell[c]) ratio += trace_ratio(pts, e, w);
      worst = std::max(worst, ratio);
    }
  }
  return worst;
}

std::vector<ProbeReport> run_trace_probe(const std::vector<Mesh>& ladder, const std::vector<double>& mesh_sizes,
                                         std::uint64_t seed, int samples) {
  if (ladder.size() != mesh_sizes.size()) throw Error("trace probe: one mesh size per mesh required");
  std::vector<ProbeReport> reports;
  std::vector<double> maxima;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    ProbeReport r;
    r.name = "trace/ratio";
    r.measured = max_trace_ratio(ladder[k], seed, samples);
    r.comparison = "finite";
    r.passed = std::isfinite(r.measured) && r.measured > 0.0;
    r.seed = seed;
    r.context = level_context(mesh_sizes[k]) + " samples=" + std::to_string(samples);
    maxima.push_back(r.measured);
    reports.push_back(r);
  }
  double spread = 0.0;
  for (std::size_t k = 1; k < maxima.size(); ++k) {
    spread = std::max(spread, std::abs(maxima[k] - maxima[k - 1]) / maxima[k - 1]);
  }
  ProbeReport s;
  s.name = "trace/stability";
  s.measured = spread;
  s.tolerance = 0.10;
  s.comparison = "<";
  s.passed = ladder.size() >= 2 && spread < s.tolerance;
  s.seed = seed;
  s.context = "levels=" + std::to_string(ladder.size());
  reports.push_back(s);
  return reports;
}

ProbeReport run_consistency_probe(const PoissonProblem& problem, const PoissonCase& exact, std::uint64_t seed,
                                  int samples, double tolerance) {
  const ConsistencyTerms t = poisson_consistency_terms(problem, exact.u);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd v = random_vector(rng, t.gap.size());
    const double scale = std::max(t.load.norm() * v.norm(), std::numeric_limits<double>::min());
    worst = std::max(worst, std::abs(t.gap.dot(v) - t.prediction.dot(v)) / scale);
  }
  ProbeReport r;
  r.name = "consistency/" + exact.name;
  r.measured = worst;
  r.tolerance = tolerance;
  r.comparison = "<";
  r.passed = worst < tolerance;
  r.seed = seed;
  std::ostringstream ctx;
  ctx << "alpha=" << problem.alpha << " cells=" << problem.mesh.num_cells() << " samples=" << samples;
  r.context = ctx.str();
  return r;
}

std::vector<ProbeReport> run_probe_battery(const std::vector<double>& mesh_sizes, std::uint64_t seed) {
  std::vector<ProbeReport> all;
  const auto append = [&all](std::vector<ProbeReport> r) { all.insert(all.end(), r.begin(), r.end()); };

  const LadderParams pp = default_params(ProblemKind::Poisson);
  const LadderParams sp = default_params(ProblemKind::Stokes);
  append(run_coercivity_probe(ProblemKind::Poisson, {pp.alpha, 1e-6}, mesh_sizes, pp, seed));
  append(run_coercivity_probe(ProblemKind::Stokes, {sp.alpha}, mesh_sizes, sp, seed));

  const DomainGeometry geom = make_trapezoid(pp.trapezoid);
  std::vector<Mesh> surrogates;
  for (const double h : mesh_sizes) surrogates.push_back(discretize(geom, h, pp.grid).surrogate);
  append(run_trace_probe(surrogates, mesh_sizes, seed));

  // Finer edge quadrature keeps the identity quadrature-limited well below 1e-8.
  GridOptions fine = pp.grid;
  fine.edge_points = 5;
  const std::size_t levels = std::min<std::size_t>(2, mesh_sizes.size());
  for (std::size_t k = 0; k < levels; ++k) {
    const Discretization dz = discretize(geom, mesh_sizes[k], fine);
    for (const PoissonCase& c : {poisson_affine_case(), poisson_quadratic_case(), poisson_trig_case()}) {
      PoissonProblem p{dz.surrogate, dz.edges, c.forcing, c.u.value, pp.alpha};
      ProbeReport r = run_consistency_probe(p, c, seed);
      r.context = level_context(mesh_sizes[k]) + " " + r.context;
      all.push_back(r);
    }
  }
  return all;
}

bool all_passed(const std::vector<ProbeReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const ProbeReport& r) { return r.passed || !r.asserted; });
}

std::string format_probe_line(const ProbeReport& r) {
  const char* status = !r.asserted ? "INFO" : r.passed ? "PASS" : "FAIL";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", r.measured);
  std::ostringstream out;
  out << status << ' ' << r.name << ' ' << buf;
  if (r.comparison != "finite") {
    std::snprintf(buf, sizeof buf, "%.3g", r.tolerance);
    out << ' ' << r.comparison << ' ' << buf;
  }
  out << " [" << r.context << "] seed=" << r.seed;
  return out.str();
}

std::string probe_summary_json(const std::vector<ProbeReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    arr.push_back({{"name", r.name},
                   {"passed", r.passed},
                   {"asserted", r.asserted},
                   {"measured", r.measured},
                   {"tolerance", r.tolerance},
                   {"comparison", r.comparison},
                   {"context", r.context},
                   {"seed", r.seed}});
  }
  nlohmann::ordered_json doc = {{"all_passed", all_passed(reports)}, {"probes", arr}};
  return doc.dump(2) + "\n";
}

}  // namespace sbm
