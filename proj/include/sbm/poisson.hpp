#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "sbm/fem.hpp"
#include "sbm/fields.hpp"
#include "sbm/geometry.hpp"
#include "sbm/mesh.hpp"

namespace sbm {

/// Pure-Dirichlet Poisson problem -lap(u) = f on the surrogate domain with
/// the shifted condition S_h u = u_D(M_h(x)) imposed by Nitsche's method.
struct PoissonProblem {
  Mesh mesh;
  std::vector<EdgeBoundaryData> edges;
  std::function<double(const Vec2&)> forcing;
  std::function<double(const Vec2&)> dirichlet;
  double alpha = 10.0;
  int forcing_degree = 4;
};

/// Rows/cols are surrogate vertices. The penalty uses h_perp of the cell
/// owning each edge.
SparseSystem assemble_poisson(const PoissonProblem& problem);

struct PoissonSolution {
  Eigen::VectorXd u;
  double relative_residual = 0.0;
};

PoissonSolution solve_poisson(const PoissonProblem& problem, SolverKind solver = SolverKind::Direct);

struct ScalarErrors {
  double l2 = 0.0;
  double h1_semi = 0.0;
};

/// Errors of a P1 field against an exact field over the mesh.
ScalarErrors error_norms(const Mesh& mesh, const Eigen::VectorXd& u_h, const ScalarField& exact,
                         int degree = 4);

/// Nodal interpolant of a scalar field.
Eigen::VectorXd interpolate(const Mesh& mesh, const std::function<double(const Vec2&)>& f);

/// Per-basis-function terms of the consistency identity for an exact
/// solution u (with -lap(u) = forcing):
///   gap[i]        = a_h(u, phi_i) - l_h(phi_i)
///   prediction[i] = -<S_h u - u_D, grad(phi_i).n> + alpha <h^-1 (S_h u - u_D), S_h phi_i>
struct ConsistencyTerms {
  Eigen::VectorXd gap;
  Eigen::VectorXd prediction;
  Eigen::VectorXd load;  // l_h(phi_i), used as a magnitude reference
};

ConsistencyTerms poisson_consistency_terms(const PoissonProblem& problem, const ScalarField& exact,
                                           int cell_degree = 6);

}  // namespace sbm
