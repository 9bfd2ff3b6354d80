#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sbm/criteria.hpp"
#include "sbm/harness.hpp"
#include "sbm/poisson.hpp"
#include "sbm/verify.hpp"

namespace py = pybind11;
using namespace sbm;

namespace {

GridOptions grid_options(double aspect, const std::string& orientation, const std::string& mesh_size) {
  GridOptions g;
  g.aspect = aspect;
  g.orientation = parse_orientation(orientation);
  g.convention = parse_convention(mesh_size);
  return g;
}

py::dict row_dict(const ConvergenceRow& r, const std::vector<std::string>& norms) {
  py::dict d;
  d["mesh_size"] = r.mesh_size;
  for (std::size_t j = 0; j < norms.size(); ++j) {
    d[py::str(norms[j])] = r.errors[j];
    d[py::str(norms[j] + "_rate")] = r.rates.empty() || !r.rates[j] ? py::object(py::none()) : py::cast(*r.rates[j]);
  }
  d["violating"] = r.violating;
  d["surrogate_edges"] = r.surrogate_edges;
  d["cells"] = r.cells;
  d["dofs"] = r.dofs;
  d["residual"] = r.residual;
  return d;
}

py::dict table_dict(const ConvergenceTable& t) {
  py::dict d;
  d["problem"] = to_string(t.problem);
  d["variant"] = to_string(t.variant);
  d["norms"] = t.norms;
  py::list rows;
  for (const auto& r : t.rows) rows.append(row_dict(r, t.norms));
  d["rows"] = rows;
  d["complete"] = t.complete;
  d["failure"] = t.failure;
  d["csv"] = t.rows.empty() ? std::string() : to_csv(t);
  d["markdown"] = t.rows.empty() ? std::string() : to_markdown(t);
  return d;
}

py::dict run(const std::string& problem, const std::vector<double>& levels, std::optional<double> alpha,
             double gamma, double mu, const std::string& variant, double aspect, const std::string& orientation,
             const std::string& mesh_size) {
  const ProblemKind kind = parse_problem(problem);
  LadderParams p = default_params(kind);
  if (alpha) p.alpha = *alpha;
  p.gamma = gamma;
  p.mu = mu;
  p.grid = grid_options(aspect, orientation, mesh_size);
  Variant v = Variant::Sbm;
  if (variant == "fitted") {
    v = Variant::Fitted;
  } else if (variant != "sbm") {
    throw Error("unknown variant '" + variant + "' (expected sbm|fitted)");
  }
  const ConvergenceTable t = kind == ProblemKind::Poisson ? run_ladder(poisson_trig_case(), levels, p, v)
                                                          : run_ladder(stokes_polynomial_exp_case(mu), levels, p, v);
  py::dict d = table_dict(t);
  if (v == Variant::Sbm) {
    const CheckResult c = kind == ProblemKind::Poisson ? check_poisson(t) : check_stokes(t);
    d["check"] = format_check(c);
    d["check_passed"] = c.passed;
  }
  return d;
}

py::list audit(const std::vector<double>& levels, double aspect, const std::string& orientation,
               const std::string& mesh_size) {
  py::list out;
  for (const auto& r : run_audit(levels, grid_options(aspect, orientation, mesh_size), TrapezoidSpec{})) {
    py::dict d;
    d["mesh_size"] = r.mesh_size;
    d["violating"] = r.violating;
    d["surrogate_edges"] = r.surrogate_edges;
    d["percentage"] = r.violating_percentage();
    out.append(d);
  }
  return out;
}

py::list verify(const std::vector<double>& levels, std::uint64_t seed) {
  py::list out;
  for (const auto& r : run_probe_battery(levels, seed)) {
    py::dict d;
    d["name"] = r.name;
    d["passed"] = r.passed;
    d["asserted"] = r.asserted;
    d["measured"] = r.measured;
    d["tolerance"] = r.tolerance;
    d["comparison"] = r.comparison;
    d["context"] = r.context;
    d["line"] = format_probe_line(r);
    out.append(d);
  }
  return out;
}

py::dict discretize_trapezoid(double h, double aspect, const std::string& orientation, const std::string& mesh_size,
                              bool neumann_left_leg) {
  TrapezoidSpec spec;
  spec.neumann_left_leg = neumann_left_leg;
  const Discretization z = discretize(make_trapezoid(spec), h, grid_options(aspect, orientation, mesh_size));
  Eigen::MatrixX2d vertices(static_cast<Eigen::Index>(z.surrogate.num_vertices()), 2);
  for (std::size_t k = 0; k < z.surrogate.num_vertices(); ++k) {
    vertices(static_cast<Eigen::Index>(k), 0) = z.surrogate.vertices()[k].x;
    vertices(static_cast<Eigen::Index>(k), 1) = z.surrogate.vertices()[k].y;
  }
  Eigen::MatrixX3i cells(static_cast<Eigen::Index>(z.surrogate.num_cells()), 3);
  for (std::size_t c = 0; c < z.surrogate.num_cells(); ++c) {
    for (int i = 0; i < 3; ++i) cells(static_cast<Eigen::Index>(c), i) = z.surrogate.cells()[c][i];
  }
  py::dict d;
  d["rect_width"] = z.rect_width;
  d["rect_height"] = z.rect_height;
  d["vertices"] = vertices;
  d["cells"] = cells;
  d["background_cells"] = z.background.num_cells();
  d["surrogate_edges"] = z.edges.size();
  d["violating"] = z.audit.violating_count;
  return d;
}

py::dict solve_poisson_trapezoid(double h, double alpha, const std::string& solution) {
  PoissonCase c;
  if (solution == "trig") {
    c = poisson_trig_case();
  } else if (solution == "affine") {
    c = poisson_affine_case();
  } else if (solution == "quadratic") {
    c = poisson_quadratic_case();
  } else {
    throw Error("unknown solution '" + solution + "' (expected trig|affine|quadratic)");
  }
  const Discretization z = discretize(make_trapezoid({}), h, GridOptions{});
  const PoissonSolution s = solve_poisson({z.surrogate, z.edges, c.forcing, c.u.value, alpha});
  const ScalarErrors e = error_norms(z.surrogate, s.u, c.u);
  py::dict d;
  d["u"] = s.u;
  d["exact"] = interpolate(z.surrogate, c.u.value);
  d["l2"] = e.l2;
  d["h1_semi"] = e.h1_semi;
  d["residual"] = s.relative_residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sbm, m) {
  m.doc() = "Shifted boundary method solvers on the trapezoid benchmark";
  py::register_exception<Error>(m, "SbmError", PyExc_ValueError);

  m.def("run", &run, py::arg("problem"), py::arg("levels"), py::arg("alpha") = py::none(), py::arg("gamma") = 1.0,
        py::arg("mu") = 1.0, py::arg("variant") = "sbm", py::arg("aspect") = 5.0, py::arg("orientation") = "wide",
        py::arg("mesh_size") = "sqrt-area", "Convergence ladder for the manufactured benchmark solution.");
  m.def("audit", &audit, py::arg("levels"), py::arg("aspect") = 5.0, py::arg("orientation") = "wide",
        py::arg("mesh_size") = "sqrt-area", "Violating surrogate-edge counts per mesh size.");
  m.def("verify", &verify, py::arg("levels") = std::vector<double>{4e-2, 2e-2, 1e-2},
        py::arg("seed") = kDefaultSeed, "Coercivity, trace and consistency probes.");
  m.def("discretize_trapezoid", &discretize_trapezoid, py::arg("h"), py::arg("aspect") = 5.0,
        py::arg("orientation") = "wide", py::arg("mesh_size") = "sqrt-area", py::arg("neumann_left_leg") = false);
  m.def("solve_poisson_trapezoid", &solve_poisson_trapezoid, py::arg("h"), py::arg("alpha") = 10.0,
        py::arg("solution") = "trig");
  m.def("convergence_rate", &convergence_rate, py::arg("h_prev"), py::arg("e_prev"), py::arg("h"), py::arg("e"));
  m.def("format_sci", &format_sci, py::arg("value"));
}
