#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sbm/criteria.hpp"
#include "sbm/harness.hpp"
#include "sbm/io.hpp"
#include "sbm/poisson.hpp"
#include "sbm/verify.hpp"

namespace fs = std::filesystem;
using namespace sbm;

namespace {

struct GridArgs {
  double aspect = 5.0;
  std::string orientation = "wide";
  std::string convention = "sqrt-area";

  void add(CLI::App* app) {
    app->add_option("--aspect", aspect, "Rectangle long/short side ratio")->capture_default_str();
    app->add_option("--orientation", orientation, "Long side direction")
        ->check(CLI::IsMember({"tall", "wide"}))
        ->capture_default_str();
    app->add_option("--mesh-size", convention, "Meaning of a mesh size")
        ->check(CLI::IsMember({"sqrt-area", "short-side"}))
        ->capture_default_str();
  }

  GridOptions options() const {
    GridOptions g;
    g.aspect = aspect;
    g.orientation = parse_orientation(orientation);
    g.convention = parse_convention(convention);
    return g;
  }
};

std::vector<double> parse_levels(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error("bad level '" + item + "'");
    }
  }
  return out;
}

std::string join_levels(const std::vector<double>& v) {
  std::string s;
  for (double h : v) s += (s.empty() ? "" : ",") + format_sci(h);
  return s;
}

void emit(const std::string& text, const fs::path& out, const std::string& file) {
  std::cout << text;
  if (!out.empty()) write_text(out / file, text);
}

struct RunArgs {
  std::string problem = "poisson";
  std::string geometry = "trapezoid";
  std::string levels = "4e-2,2e-2,1e-2,5e-3";
  std::optional<double> alpha;
  double gamma = 1.0;
  double mu = 1.0;
  std::string stabilization = "area";
  std::string solver = "direct";
  std::string variant = "sbm";
  bool zero_mean = false;
  std::vector<std::string> formats{"csv"};
  std::string out;
  bool check = false;
  GridArgs grid;
};

int do_run(const RunArgs& a) {
  if (a.geometry != "trapezoid") throw Error("only the trapezoid geometry is supported");
  const ProblemKind kind = parse_problem(a.problem);
  LadderParams p = default_params(kind);
  if (a.alpha) p.alpha = *a.alpha;
  p.gamma = a.gamma;
  p.mu = a.mu;
  p.stabilization = parse_stabilization_length(a.stabilization);
  p.solver = parse_solver(a.solver);
  p.neumann_left_leg = !a.zero_mean;
  p.grid = a.grid.options();
  std::vector<ReportFormat> formats;
  for (const auto& f : a.formats) formats.push_back(parse_format(f));
  for (const auto f : formats) p.keep_fields = p.keep_fields || f == ReportFormat::Vtk;
  const auto levels = parse_levels(a.levels);

  Comparison cmp;
  if (kind == ProblemKind::Poisson) {
    const PoissonCase c = poisson_trig_case();
    if (a.variant != "fitted") cmp.sbm = run_ladder(c, levels, p, Variant::Sbm);
    if (a.variant != "sbm") cmp.fitted = run_ladder(c, levels, p, Variant::Fitted);
  } else {
    const StokesCase c = stokes_polynomial_exp_case(p.mu);
    if (a.variant != "fitted") cmp.sbm = run_ladder(c, levels, p, Variant::Sbm);
    if (a.variant != "sbm") cmp.fitted = run_ladder(c, levels, p, Variant::Fitted);
  }

  const fs::path out = a.out;
  std::vector<const ConvergenceTable*> tables;
  if (a.variant != "fitted") tables.push_back(&cmp.sbm);
  if (a.variant != "sbm") tables.push_back(&cmp.fitted);
  for (const auto* t : tables) {
    const std::string stem = std::string(to_string(kind)) + "_" + to_string(t->variant);
    if (!t->complete) std::cerr << "warning: " << stem << " ladder incomplete: " << t->failure << '\n';
    if (t->rows.empty()) continue;
    std::cout << "# " << stem << " (" << to_string(p.grid.orientation) << ", aspect " << p.grid.aspect
              << ", alpha " << p.alpha << ")\n";
    std::cout << to_markdown(*t);
    if (!out.empty()) {
      for (const auto f : formats) {
        for (const auto& path : emit_report(*t, f, out, stem)) std::cerr << "wrote " << path.string() << '\n';
      }
    }
  }
  if (a.variant == "both" && cmp.sbm.complete && cmp.fitted.complete && !cmp.sbm.rows.empty()) {
    std::cout << "# fitted vs sbm\n";
    std::cout << comparison_markdown(cmp);
    if (!out.empty()) {
      write_text(out / (std::string(to_string(kind)) + "_comparison.csv"), comparison_csv(cmp));
      write_text(out / (std::string(to_string(kind)) + "_comparison.md"), comparison_markdown(cmp));
    }
  }

  if (!a.check) return 0;
  std::vector<CheckResult> checks;
  for (const auto* t : tables) {
    if (t->variant == Variant::Sbm) {
      checks.push_back(kind == ProblemKind::Poisson ? check_poisson(*t) : check_stokes(*t));
    } else {
      checks.push_back(check_rates(*t));
    }
  }
  if (a.variant == "both") checks.push_back(check_parity(cmp));
  bool ok = true;
  for (const auto& c : checks) {
    std::cout << format_check(c);
    ok = ok && c.passed;
  }
  return ok ? 0 : 2;
}

int do_audit(const std::string& levels, const GridArgs& grid, const std::string& format, const std::string& out,
             bool check) {
  const auto rows = run_audit(parse_levels(levels), grid.options(), TrapezoidSpec{});
  const std::string text = format == "csv" ? audit_csv(rows) : audit_markdown(rows);
  emit(text, out, format == "csv" ? "audit.csv" : "audit.md");
  if (!check) return 0;
  const CheckResult r = check_violations(rows);
  std::cout << format_check(r);
  return r.passed ? 0 : 2;
}

int do_verify(const std::string& levels, std::uint64_t seed, const std::string& out, bool check) {
  const auto reports = run_probe_battery(parse_levels(levels), seed);
  std::string lines;
  for (const auto& r : reports) lines += format_probe_line(r) + "\n";
  emit(lines, out, "probes.txt");
  if (!out.empty()) write_text(fs::path(out) / "probes.json", probe_summary_json(reports));
  const bool ok = all_passed(reports);
  std::cout << (ok ? "all probes passed" : "probe failures present") << '\n';
  return check && !ok ? 2 : 0;
}

int do_export(double h, const std::string& problem, const GridArgs& grid, const std::string& out) {
  const ProblemKind kind = parse_problem(problem);
  const LadderParams p = default_params(kind);
  TrapezoidSpec spec;
  spec.neumann_left_leg = kind == ProblemKind::Stokes;
  const DomainGeometry geom = make_trapezoid(spec);
  const Discretization dz = discretize(geom, h, grid.options());
  const fs::path dir = out;
  write_vtk(dir / "background.vtk", dz.background);
  write_vtk(dir / "surrogate.vtk", dz.surrogate);
  write_mesh_dump(dir / "surrogate.txt", dz.surrogate);
  SparseSystem sys;
  if (kind == ProblemKind::Poisson) {
    const PoissonCase c = poisson_trig_case();
    sys = assemble_poisson(PoissonProblem{dz.surrogate, dz.edges, c.forcing, c.u.value, p.alpha});
  } else {
    const StokesCase c = stokes_polynomial_exp_case(p.mu);
    StokesProblem sp;
    sp.mesh = dz.surrogate;
    sp.edges = dz.edges;
    sp.alpha = p.alpha;
    sp.forcing = c.forcing;
    sp.dirichlet = c.u.value;
    sp.traction = traction_on(c, geom);
    sys = assemble_stokes(sp);
  }
  write_matrix_market(dir / "matrix.mtx", sys.matrix);
  std::cout << "h=" << format_sci(h) << " cells=" << dz.surrogate.num_cells()
            << " surrogate_edges=" << dz.audit.total_count << " violating=" << dz.audit.violating_count
            << " dofs=" << sys.rhs.size() << "\nwrote background.vtk surrogate.vtk surrogate.txt matrix.mtx to "
            << dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shifted boundary method: Poisson and Stokes benchmarks on an unfitted trapezoid"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Convergence ladder with error and rate tables");
  run_cmd->add_option("--problem", run.problem)->check(CLI::IsMember({"poisson", "stokes"}))->capture_default_str();
  run_cmd->add_option("--geometry", run.geometry)->check(CLI::IsMember({"trapezoid"}))->capture_default_str();
  run_cmd->add_option("--levels", run.levels, "Comma-separated decreasing mesh sizes")->capture_default_str();
  run_cmd->add_option("--alpha", run.alpha, "Nitsche penalty (default 10 Poisson, 2.5 Stokes)");
  run_cmd->add_option("--gamma", run.gamma, "Pressure stabilization factor")->capture_default_str();
  run_cmd->add_option("--mu", run.mu, "Viscosity")->capture_default_str();
  run_cmd->add_option("--stabilization-length", run.stabilization, "Element length in the pressure stabilization")
      ->check(CLI::IsMember({"area", "tau"}))
      ->capture_default_str();
  run_cmd->add_option("--solver", run.solver)->check(CLI::IsMember({"direct", "gmres"}))->capture_default_str();
  run_cmd->add_option("--variant", run.variant)
      ->check(CLI::IsMember({"sbm", "fitted", "both"}))
      ->capture_default_str();
  run_cmd->add_flag("--zero-mean", run.zero_mean, "Stokes: Dirichlet on every side, zero-mean pressure");
  run_cmd->add_option("--format", run.formats, "csv, markdown, vtk (repeatable)")
      ->check(CLI::IsMember({"csv", "markdown", "md", "vtk"}));
  run_cmd->add_option("--out", run.out, "Output directory");
  run_cmd->add_flag("--check", run.check, "Exit 2 on a tolerance breach");
  run.grid.add(run_cmd);

  std::string audit_levels = "4e-2,2e-2,1e-2,5e-3,2.5e-3,1.25e-3", audit_format = "markdown", audit_out;
  bool audit_check = false;
  GridArgs audit_grid;
  auto* audit_cmd = app.add_subcommand("audit", "Count surrogate edges with nu.n <= 0 per level");
  audit_cmd->add_option("--levels", audit_levels)->capture_default_str();
  audit_cmd->add_option("--format", audit_format)->check(CLI::IsMember({"csv", "markdown"}))->capture_default_str();
  audit_cmd->add_option("--out", audit_out, "Output directory");
  audit_cmd->add_flag("--check", audit_check, "Exit 2 if any level has no violating edge");
  audit_grid.add(audit_cmd);

  std::string verify_levels = join_levels(reference::benchmark_levels()), verify_out;
  std::uint64_t seed = kDefaultSeed;
  bool verify_check = false;
  auto* verify_cmd = app.add_subcommand("verify", "Coercivity, trace and consistency probes");
  verify_cmd->add_option("--levels", verify_levels)->capture_default_str();
  verify_cmd->add_option("--seed", seed)->capture_default_str();
  verify_cmd->add_option("--out", verify_out, "Directory for probes.txt and probes.json");
  verify_cmd->add_flag("--check", verify_check, "Exit 2 on an asserted probe failure");

  double export_h = 4e-2;
  std::string export_problem = "poisson", export_out = ".";
  GridArgs export_grid;
  auto* export_cmd = app.add_subcommand("export", "Write meshes (VTK, text dump) and the system matrix");
  export_cmd->add_option("--size", export_h, "Mesh size")->capture_default_str();
  export_cmd->add_option("--problem", export_problem)
      ->check(CLI::IsMember({"poisson", "stokes"}))
      ->capture_default_str();
  export_cmd->add_option("--out", export_out)->capture_default_str();
  export_grid.add(export_cmd);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return do_run(run);
    if (*audit_cmd) return do_audit(audit_levels, audit_grid, audit_format, audit_out, audit_check);
    if (*verify_cmd) return do_verify(verify_levels, seed, verify_out, verify_check);
    if (*export_cmd) return do_export(export_h, export_problem, export_grid, export_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
