#include "sbm/harness.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sbm/io.hpp"
#include "sbm/poisson.hpp"

namespace sbm {

ProblemKind parse_problem(const std::string& name) {
  if (name == "poisson") return ProblemKind::Poisson;
  if (name == "stokes") return ProblemKind::Stokes;
  throw Error("unknown problem '" + name + "' (expected poisson|stokes)");
}

const char* to_string(ProblemKind kind) { return kind == ProblemKind::Poisson ? "poisson" : "stokes"; }

MeshSizeConvention parse_convention(const std::string& name) {
  if (name == "sqrt-area") return MeshSizeConvention::SqrtArea;
  if (name == "short-side") return MeshSizeConvention::ShortSide;
  throw Error("unknown mesh-size convention '" + name + "' (expected sqrt-area|short-side)");
}

const char* to_string(MeshSizeConvention c) {
  return c == MeshSizeConvention::SqrtArea ? "sqrt-area" : "short-side";
}

Orientation parse_orientation(const std::string& name) {
  if (name == "tall") return Orientation::Tall;
  if (name == "wide") return Orientation::Wide;
  throw Error("unknown orientation '" + name + "' (expected tall|wide)");
}

const char* to_string(Orientation o) { return o == Orientation::Tall ? "tall" : "wide"; }

const char* to_string(Variant v) { return v == Variant::Sbm ? "sbm" : "fitted"; }

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  if (name == "vtk") return ReportFormat::Vtk;
  throw Error("unknown format '" + name + "' (expected csv|markdown|vtk)");
}

Discretization discretize(const DomainGeometry& geom, double mesh_size, const GridOptions& grid) {
  if (!(mesh_size > 0.0)) throw Error("mesh size must be positive");
  if (!(grid.aspect >= 1.0)) throw Error("aspect ratio must be >= 1");
  double long_side = 0.0, short_side = 0.0;
  if (grid.convention == MeshSizeConvention::SqrtArea) {
    long_side = mesh_size * std::sqrt(grid.aspect);
    short_side = mesh_size / std::sqrt(grid.aspect);
  } else {
    long_side = mesh_size * grid.aspect;
    short_side = mesh_size;
  }
  Discretization dz;
  dz.mesh_size = mesh_size;
  dz.rect_width = grid.orientation == Orientation::Wide ? long_side : short_side;
  dz.rect_height = grid.orientation == Orientation::Wide ? short_side : long_side;

  const BBox box = geom.bounding_box();
  const int nx = static_cast<int>(std::floor(box.width() / dz.rect_width + 1e-9)) + 1;
  const int ny = static_cast<int>(std::floor(box.height() / dz.rect_height + 1e-9)) + 1;
  const BBox grid_box{box.lo, {box.lo.x + nx * dz.rect_width, box.lo.y + ny * dz.rect_height}};
  dz.background = build_rect_grid(grid_box, nx, ny);
  dz.surrogate = extract_surrogate(dz.background, geom, 1e-12 * grid_box.length_scale());
  dz.edges = build_edge_data(geom, dz.surrogate, gauss_rule(grid.edge_points));
  dz.audit = audit_normals(dz.edges);
  return dz;
}

std::vector<EdgeBoundaryData> fitted_edges(std::vector<EdgeBoundaryData> edges) {
  for (auto& ed : edges) {
    for (auto& bp : ed.points) {
      bp.d = {};
      bp.nu = {};
      bp.is_zero = true;
    }
  }
  return edges;
}

LadderParams default_params(ProblemKind kind) {
  LadderParams p;
  if (kind == ProblemKind::Stokes) p.alpha = 2.5;
  return p;
}

double convergence_rate(double h_prev, double e_prev, double h, double e) {
  return std::log(e_prev / e) / std::log(h_prev / h);
}

namespace {

void check_sizes(const std::vector<double>& sizes) {
  if (sizes.size() < 2) throw Error("need >= 2 levels");
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (!(sizes[k] > 0.0)) throw Error("mesh sizes must be positive");
    if (k > 0 && !(sizes[k] < sizes[k - 1])) throw Error("mesh sizes must be strictly decreasing");
  }
}

void fill_rates(ConvergenceTable& t) {
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    auto& row = t.rows[k];
    row.rates.assign(row.errors.size(), std::nullopt);
    if (k == 0) continue;
    const auto& prev = t.rows[k - 1];
    for (std::size_t j = 0; j < row.errors.size(); ++j) {
      row.rates[j] = convergence_rate(prev.mesh_size, prev.errors[j], row.mesh_size, row.errors[j]);
    }
  }
}

template <typename Level>
ConvergenceTable ladder(ProblemKind kind, std::vector<std::string> norms, const std::vector<double>& sizes,
                        Variant variant, Level&& level) {
  check_sizes(sizes);
  ConvergenceTable t;
  t.problem = kind;
  t.variant = variant;
  t.norms = std::move(norms);
  for (const double h : sizes) {
    try {
      t.rows.push_back(level(h));
    } catch (const Error& err) {
      t.complete = false;
      t.failure = "level h=" + format_sci(h) + ": " + err.what();
      break;
    }
  }
  fill_rates(t);
  return t;
}

ConvergenceRow base_row(const Discretization& dz) {
  ConvergenceRow row;
  row.mesh_size = dz.mesh_size;
  row.violating = dz.audit.violating_count;
  row.surrogate_edges = dz.audit.total_count;
  row.cells = dz.surrogate.num_cells();
  return row;
}

}  // namespace

ConvergenceTable run_ladder(const PoissonCase& c, const std::vector<double>& mesh_sizes, const LadderParams& params,
                            Variant variant) {
  TrapezoidSpec spec = params.trapezoid;
  spec.neumann_left_leg = false;
  const DomainGeometry geom = make_trapezoid(spec);
  return ladder(ProblemKind::Poisson, {"l2"}, mesh_sizes, variant, [&](double h) {
    Discretization dz = discretize(geom, h, params.grid);
    auto edges = variant == Variant::Fitted ? fitted_edges(dz.edges) : dz.edges;
    PoissonProblem problem{dz.surrogate, std::move(edges), c.forcing, c.u.value, params.alpha};
    const PoissonSolution sol = solve_poisson(problem, params.solver);
    ConvergenceRow row = base_row(dz);
    row.errors = {error_norms(dz.surrogate, sol.u, c.u).l2};
    row.dofs = dz.surrogate.num_vertices();
    row.residual = sol.relative_residual;
    if (params.keep_fields) {
      const Eigen::VectorXd exact = interpolate(dz.surrogate, c.u.value);
      row.fields = LevelFields{dz.surrogate, {{"u_h", sol.u}, {"u_exact", exact}, {"error", exact - sol.u}}, {}};
    }
    return row;
  });
}

ConvergenceTable run_ladder(const StokesCase& c, const std::vector<double>& mesh_sizes, const LadderParams& params,
                            Variant variant) {
  TrapezoidSpec spec = params.trapezoid;
  spec.neumann_left_leg = params.neumann_left_leg;
  const DomainGeometry geom = make_trapezoid(spec);
  const PressureGauge gauge = params.neumann_left_leg ? PressureGauge::Neumann : PressureGauge::ZeroMean;
  return ladder(ProblemKind::Stokes, {"strain", "velocity", "pressure"}, mesh_sizes, variant, [&](double h) {
    Discretization dz = discretize(geom, h, params.grid);
    auto edges = variant == Variant::Fitted ? fitted_edges(dz.edges) : dz.edges;
    StokesProblem problem;
    problem.mesh = dz.surrogate;
    problem.edges = std::move(edges);
    problem.mu = params.mu;
    problem.alpha = params.alpha;
    problem.gamma = params.gamma;
    problem.forcing = c.forcing;
    problem.dirichlet = c.u.value;
    if (params.neumann_left_leg) problem.traction = traction_on(c, geom);
    problem.gauge = gauge;
    problem.stabilization_length = params.stabilization;
    const StokesSolution sol = solve_stokes(problem, params.solver);
    const StokesErrors e = stokes_error_norms(dz.surrogate, sol, c.u, c.p, gauge);
    ConvergenceRow row = base_row(dz);
    row.errors = {e.strain_l2, e.vel_l2, e.pres_l2};
    row.dofs = 3 * dz.surrogate.num_vertices() + (gauge == PressureGauge::ZeroMean ? 1 : 0);
    row.residual = sol.relative_residual;
    if (params.keep_fields) {
      const auto& m = dz.surrogate;
      const Eigen::VectorXd ex = interpolate(m, [&](const Vec2& x) { return c.u.value(x).x; });
      const Eigen::VectorXd ey = interpolate(m, [&](const Vec2& x) { return c.u.value(x).y; });
      const Eigen::VectorXd pe = interpolate(m, c.p.value);
      row.fields = LevelFields{m,
                               {{"p_h", sol.p}, {"p_exact", pe}},
                               {{"velocity_h", {sol.ux, sol.uy}}, {"velocity_exact", {ex, ey}}}};
    }
    return row;
  });
}

Comparison run_bodyfitted_comparison(const PoissonCase& c, const std::vector<double>& mesh_sizes,
                                     const LadderParams& params) {
  return {run_ladder(c, mesh_sizes, params, Variant::Sbm), run_ladder(c, mesh_sizes, params, Variant::Fitted)};
}

Comparison run_bodyfitted_comparison(const StokesCase& c, const std::vector<double>& mesh_sizes,
                                     const LadderParams& params) {
  return {run_ladder(c, mesh_sizes, params, Variant::Sbm), run_ladder(c, mesh_sizes, params, Variant::Fitted)};
}

std::vector<ConvergenceRow> run_audit(const std::vector<double>& mesh_sizes, const GridOptions& grid,
                                      const TrapezoidSpec& trapezoid) {
  if (mesh_sizes.empty()) throw Error("need >= 1 level");
  const DomainGeometry geom = make_trapezoid(trapezoid);
  std::vector<ConvergenceRow> rows;
  for (const double h : mesh_sizes) rows.push_back(base_row(discretize(geom, h, grid)));
  return rows;
}

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2E", v);
  return buf;
}

namespace {

std::string format_fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string rate_cell(const std::optional<double>& r) { return r ? format_fixed(*r) : "-"; }

void require_rows(const std::vector<ConvergenceRow>& rows) {
  if (rows.empty()) throw Error("report: no rows");
}

std::string norm_title(ProblemKind kind, const std::string& norm) {
  if (kind == ProblemKind::Poisson) return "L2 error";
  if (norm == "strain") return "strain L2 error";
  if (norm == "velocity") return "velocity L2 error";
  return "pressure L2 error";
}

}  // namespace

std::string to_csv(const ConvergenceTable& t) {
  require_rows(t.rows);
  std::ostringstream out;
  out << "mesh_size";
  for (const auto& n : t.norms) out << ',' << n << "_error," << n << "_rate";
  out << ",violating_edges,surrogate_edges,violating_pct\n";
  for (const auto& row : t.rows) {
    out << format_sci(row.mesh_size);
    for (std::size_t j = 0; j < row.errors.size(); ++j) {
      out << ',' << format_sci(row.errors[j]) << ',' << rate_cell(row.rates[j]);
    }
    out << ',' << row.violating << ',' << row.surrogate_edges << ',' << format_fixed(row.violating_percentage())
        << '\n';
  }
  return out.str();
}

std::string to_markdown(const ConvergenceTable& t) {
  require_rows(t.rows);
  std::ostringstream out;
  out << "| Mesh Size |";
  for (const auto& n : t.norms) out << ' ' << norm_title(t.problem, n) << " | Rate |";
  out << "\n|---|";
  for (std::size_t j = 0; j < t.norms.size(); ++j) out << "---|---|";
  out << '\n';
  for (const auto& row : t.rows) {
    out << "| " << format_sci(row.mesh_size) << " |";
    for (std::size_t j = 0; j < row.errors.size(); ++j) {
      out << ' ' << format_sci(row.errors[j]) << " | " << rate_cell(row.rates[j]) << " |";
    }
    out << '\n';
  }
  return out.str();
}

std::string comparison_csv(const Comparison& c) {
  require_rows(c.sbm.rows);
  if (c.fitted.rows.size() != c.sbm.rows.size()) throw Error("report: fitted and SBM ladders differ in length");
  std::ostringstream out;
  out << "mesh_size";
  for (const char* v : {"fitted", "sbm"}) {
    for (const auto& n : c.sbm.norms) out << ',' << v << '_' << n << "_error," << v << '_' << n << "_rate";
  }
  out << '\n';
  for (std::size_t k = 0; k < c.sbm.rows.size(); ++k) {
    out << format_sci(c.sbm.rows[k].mesh_size);
    for (const auto* t : {&c.fitted, &c.sbm}) {
      const auto& row = t->rows[k];
      for (std::size_t j = 0; j < row.errors.size(); ++j) {
        out << ',' << format_sci(row.errors[j]) << ',' << rate_cell(row.rates[j]);
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string comparison_markdown(const Comparison& c) {
  require_rows(c.sbm.rows);
  if (c.fitted.rows.size() != c.sbm.rows.size()) throw Error("report: fitted and SBM ladders differ in length");
  std::ostringstream out;
  out << "| Mesh Size |";
  for (const char* v : {"Fitted", "SBM"}) {
    for (const auto& n : c.sbm.norms) out << ' ' << v << ' ' << norm_title(c.sbm.problem, n) << " | Rate |";
  }
  out << "\n|---|";
  for (std::size_t j = 0; j < 2 * c.sbm.norms.size(); ++j) out << "---|---|";
  out << '\n';
  for (std::size_t k = 0; k < c.sbm.rows.size(); ++k) {
    out << "| " << format_sci(c.sbm.rows[k].mesh_size) << " |";
    for (const auto* t : {&c.fitted, &c.sbm}) {
      const auto& row = t->rows[k];
      for (std::size_t j = 0; j < row.errors.size(); ++j) {
        out << ' ' << format_sci(row.errors[j]) << " | " << rate_cell(row.rates[j]) << " |";
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string audit_csv(const std::vector<ConvergenceRow>& rows) {
  require_rows(rows);
  std::ostringstream out;
  out << "mesh_size,violating_edges,surrogate_edges,violating_pct\n";
  for (const auto& row : rows) {
    out << format_sci(row.mesh_size) << ',' << row.violating << ',' << row.surrogate_edges << ','
        << format_fixed(row.violating_percentage()) << '\n';
  }
  return out.str();
}

std::string audit_markdown(const std::vector<ConvergenceRow>& rows) {
  require_rows(rows);
  std::ostringstream out;
  out << "| Mesh Size | Violating edges | Surrogate edges | Percentage |\n|---|---|---|---|\n";
  for (const auto& row : rows) {
    out << "| " << format_sci(row.mesh_size) << " | " << row.violating << " | " << row.surrogate_edges << " | "
        << format_fixed(row.violating_percentage()) << "% |\n";
  }
  return out.str();
}

std::vector<std::filesystem::path> emit_report(const ConvergenceTable& t, ReportFormat format,
                                               const std::filesystem::path& dir, const std::string& stem) {
  require_rows(t.rows);
  std::vector<std::filesystem::path> written;
  switch (format) {
    case ReportFormat::Csv:
      written.push_back(dir / (stem + ".csv"));
      write_text(written.back(), to_csv(t));
      break;
    case ReportFormat::Markdown:
      written.push_back(dir / (stem + ".md"));
      write_text(written.back(), to_markdown(t));
      break;
    case ReportFormat::Vtk:
      for (std::size_t k = 0; k < t.rows.size(); ++k) {
        const auto& f = t.rows[k].fields;
        if (!f) throw Error("report: vtk output needs fields (run with keep_fields)");
        written.push_back(dir / (stem + "_level" + std::to_string(k) + ".vtk"));
        write_vtk(written.back(), f->mesh, f->scalars, f->vectors);
      }
      break;
  }
  return written;
}

}  // namespace sbm
