#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sbm/fem.hpp"
#include "sbm/geometry.hpp"
#include "sbm/manufactured.hpp"
#include "sbm/mesh.hpp"
#include "sbm/stokes.hpp"

namespace sbm {

enum class ProblemKind { Poisson, Stokes };

ProblemKind parse_problem(const std::string& name);
const char* to_string(ProblemKind kind);

/// How a nominal mesh size h maps to the background rectangle sides.
enum class MeshSizeConvention {
  SqrtArea,   // h^2 = rectangle area: sides h*sqrt(aspect) and h/sqrt(aspect)
  ShortSide,  // h = short side: sides h*aspect and h
};

MeshSizeConvention parse_convention(const std::string& name);
const char* to_string(MeshSizeConvention c);
Orientation parse_orientation(const std::string& name);
const char* to_string(Orientation o);

struct GridOptions {
  double aspect = 5.0;
  Orientation orientation = Orientation::Wide;
  MeshSizeConvention convention = MeshSizeConvention::SqrtArea;
  int edge_points = 3;  // Gauss points per surrogate edge
};

/// Background grid anchored at the lower-left corner of the domain's bounding
/// box, extended past the far sides so the surrogate stays interior there.
struct Discretization {
  double mesh_size = 0.0;
  double rect_width = 0.0;
  double rect_height = 0.0;
  Mesh background;
  Mesh surrogate;
  std::vector<EdgeBoundaryData> edges;
  NormalAudit audit;
};

Discretization discretize(const DomainGeometry& geom, double mesh_size, const GridOptions& grid);

/// Body-fitted limit: the true boundary is moved onto the surrogate boundary,
/// so every distance vector vanishes and data are taken at the surrogate edge.
std::vector<EdgeBoundaryData> fitted_edges(std::vector<EdgeBoundaryData> edges);

enum class Variant { Sbm, Fitted };
const char* to_string(Variant v);

struct LadderParams {
  double alpha = 10.0;
  double gamma = 1.0;
  double mu = 1.0;
  bool neumann_left_leg = true;  // Stokes only; otherwise zero-mean pressure
  StabilizationLength stabilization = StabilizationLength::Area;
  SolverKind solver = SolverKind::Direct;
  GridOptions grid;
  TrapezoidSpec trapezoid;
  bool keep_fields = false;
};

/// Benchmark defaults: alpha 10 for Poisson, alpha 2.5 with a Neumann left
/// leg for Stokes.
LadderParams default_params(ProblemKind kind);

/// Nodal fields of one level, kept for VTK output.
struct LevelFields {
  Mesh mesh;
  std::vector<std::pair<std::string, Eigen::VectorXd>> scalars;
  std::vector<std::pair<std::string, std::array<Eigen::VectorXd, 2>>> vectors;
};

struct ConvergenceRow {
  double mesh_size = 0.0;
  std::vector<double> errors;                // one per norm
  std::vector<std::optional<double>> rates;  // empty optional on the first level
  int violating = 0;
  int surrogate_edges = 0;
  double violating_percentage() const {
    return surrogate_edges == 0 ? 0.0 : 100.0 * violating / surrogate_edges;
  }
  std::size_t cells = 0;
  std::size_t dofs = 0;
  double residual = 0.0;
  std::optional<LevelFields> fields;
};

struct ConvergenceTable {
  ProblemKind problem = ProblemKind::Poisson;
  Variant variant = Variant::Sbm;
  std::vector<std::string> norms;
  std::vector<ConvergenceRow> rows;
  bool complete = true;  // false when a level failed; rows then hold the levels before it
  std::string failure;
};

/// log(e_prev / e) / log(h_prev / h).
double convergence_rate(double h_prev, double e_prev, double h, double e);

ConvergenceTable run_ladder(const PoissonCase& c, const std::vector<double>& mesh_sizes,
                            const LadderParams& params, Variant variant = Variant::Sbm);
ConvergenceTable run_ladder(const StokesCase& c, const std::vector<double>& mesh_sizes,
                            const LadderParams& params, Variant variant = Variant::Sbm);

struct Comparison {
  ConvergenceTable sbm;
  ConvergenceTable fitted;
};

Comparison run_bodyfitted_comparison(const PoissonCase& c, const std::vector<double>& mesh_sizes,
                                     const LadderParams& params);
Comparison run_bodyfitted_comparison(const StokesCase& c, const std::vector<double>& mesh_sizes,
                                     const LadderParams& params);

/// Violating-edge audit per mesh size (no solve).
std::vector<ConvergenceRow> run_audit(const std::vector<double>& mesh_sizes, const GridOptions& grid,
                                      const TrapezoidSpec& trapezoid);

enum class ReportFormat { Csv, Markdown, Vtk };
ReportFormat parse_format(const std::string& name);

/// 3 significant digits in scientific notation, e.g. 5.12E-03.
std::string format_sci(double v);

std::string to_csv(const ConvergenceTable& t);
std::string to_markdown(const ConvergenceTable& t);
std::string comparison_csv(const Comparison& c);
std::string comparison_markdown(const Comparison& c);
std::string audit_csv(const std::vector<ConvergenceRow>& rows);
std::string audit_markdown(const std::vector<ConvergenceRow>& rows);

/// Writes the table under dir and returns the written paths. Vtk writes one
/// file per level and requires rows run with keep_fields.
std::vector<std::filesystem::path> emit_report(const ConvergenceTable& t, ReportFormat format,
                                               const std::filesystem::path& dir, const std::string& stem);

}  // namespace sbm
