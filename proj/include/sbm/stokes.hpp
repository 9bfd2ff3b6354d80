#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sbm/fem.hpp"
#include "sbm/fields.hpp"
#include "sbm/geometry.hpp"
#include "sbm/mesh.hpp"

namespace sbm {

enum class PressureGauge {
  Neumann,   // pressure level fixed by a traction boundary
  ZeroMean,  // integral of p over the surrogate domain constrained to zero
};

/// Element length in the pressure stabilization gamma h^2 / (2 mu).
enum class StabilizationLength {
  Tau,   // h_tau = sqrt(h_T h_T_i)
  Area,  // sqrt(2 |T|), the leg of the right isosceles triangle of equal area
};

StabilizationLength parse_stabilization_length(const std::string& name);
std::string to_string(StabilizationLength kind);

/// Stokes flow -div(2 mu eps(u) - p I) = f, div u = 0 with equal-order P1
/// velocity/pressure, residual-based pressure stabilization, shifted
/// Dirichlet conditions on Dirichlet edges and tractions on body-fitted
/// Neumann edges.
struct StokesProblem {
  Mesh mesh;
  std::vector<EdgeBoundaryData> edges;
  double mu = 1.0;
  double alpha = 2.5;
  double gamma = 1.0;
  std::function<Vec2(const Vec2&)> forcing;
  std::function<Vec2(const Vec2&)> dirichlet;
  std::function<Vec2(const Vec2&)> traction;
  PressureGauge gauge = PressureGauge::Neumann;
  int forcing_degree = 4;
  StabilizationLength stabilization_length = StabilizationLength::Area;
};

/// Dofs interleaved (u_x, u_y, p) per vertex, plus a trailing multiplier in
/// zero-mean mode.
SparseSystem assemble_stokes(const StokesProblem& problem);

struct StokesSolution {
  Eigen::VectorXd ux;
  Eigen::VectorXd uy;
  Eigen::VectorXd p;
  double relative_residual = 0.0;
};

StokesSolution solve_stokes(const StokesProblem& problem, SolverKind solver = SolverKind::Direct);

struct StokesErrors {
  double vel_l2 = 0.0;
  double strain_l2 = 0.0;
  double pres_l2 = 0.0;
};

/// Velocity, strain and pressure L2 errors. With ZeroMean the pressure
/// error has its mean removed before the norm is taken.
StokesErrors stokes_error_norms(const Mesh& mesh, const StokesSolution& sol, const VectorField& u,
                                const ScalarField& p, PressureGauge gauge, int degree = 4);

/// Integral of a P1 field over the mesh.
double integrate_p1(const Mesh& mesh, const Eigen::VectorXd& f);

/// The velocity-velocity block of an assembled Stokes matrix.
Eigen::SparseMatrix<double> velocity_block(const SparseSystem& system);

}  // namespace sbm
