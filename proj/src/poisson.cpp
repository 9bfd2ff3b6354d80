#include "sbm/poisson.hpp"

#include <cmath>
#include <sstream>

#include "sbm/quadrature.hpp"

namespace sbm {

namespace {

void require_dirichlet(const std::vector<EdgeBoundaryData>& edges) {
  for (const auto& ed : edges) {
    if (ed.tag != BoundaryTag::Dirichlet) {
      throw Error("poisson: Neumann-tagged surrogate edge present; only Dirichlet problems are supported");
    }
  }
}

// u_D composed with the boundary map, evaluated at the projected point.
double shifted_datum(const PoissonProblem& p, const BoundaryPoint& bp) {
  return p.dirichlet(bp.x + bp.d);
}

}  // namespace

SparseSystem assemble_poisson(const PoissonProblem& problem) {
  if (!(problem.alpha > 0.0)) throw Error("poisson: penalty alpha must be positive");
  require_dirichlet(problem.edges);
  const Mesh& mesh = problem.mesh;
  const DofMap dofs(mesh.num_vertices(), 1);
  Assembler asm_(dofs);
  const CellRule& rule = cell_rule(problem.forcing_degree);

  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cells()[c];
    const P1Element e = shape_p1(mesh.cell_points(static_cast<int>(c)));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) asm_.add(cell[i], cell[j], e.area * dot(e.grads[i], e.grads[j]));
    }
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& bary = rule.points[q];
      const double fw = problem.forcing(e.map(bary)) * rule.weights[q] * 2.0 * e.area;
      for (int i = 0; i < 3; ++i) asm_.add_rhs(cell[i], fw * bary[i]);
    }
  }

  for (const auto& ed : problem.edges) {
    const auto& cell = mesh.cells()[ed.edge.cell];
    const P1Element e = shape_p1(mesh.cell_points(ed.edge.cell));
    const double penalty = problem.alpha / ed.h_perp;
    std::array<double, 3> gn{}, gd{};
    for (const auto& bp : ed.points) {
      const auto phi = e.values(bp.x);
      const auto s = eval_shifted(phi, e.grads, bp.d);
      for (int i = 0; i < 3; ++i) {
        gn[i] = dot(e.grads[i], ed.normal);
        gd[i] = dot(e.grads[i], bp.d);
      }
      const double ubar = shifted_datum(problem, bp);
      const double w = bp.weight;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const double v = -gn[j] * s[i] - s[j] * gn[i] + penalty * s[j] * s[i] + gn[j] * gd[i];
          asm_.add(cell[i], cell[j], w * v);
        }
        asm_.add_rhs(cell[i], w * (-ubar * gn[i] + penalty * ubar * s[i]));
      }
    }
  }
  return std::move(asm_).finalize();
}

PoissonSolution solve_poisson(const PoissonProblem& problem, SolverKind solver) {
  const SparseSystem sys = assemble_poisson(problem);
  try {
    const SolveResult r = solve(sys, solver);
    return {r.x, r.relative_residual};
  } catch (const Error& err) {
    std::ostringstream msg;
    msg << err.what() << " [poisson: alpha=" << problem.alpha << ", cells=" << problem.mesh.num_cells()
        << ", boundary edges=" << problem.edges.size() << ", h_max=" << max_h(problem.mesh) << "]";
    throw Error(msg.str());
  }
}

ScalarErrors error_norms(const Mesh& mesh, const Eigen::VectorXd& u_h, const ScalarField& exact,
                         int degree) {
  if (static_cast<std::size_t>(u_h.size()) != mesh.num_vertices()) {
    throw Error("error_norms: field size does not match mesh");
  }
  const CellRule& rule = cell_rule(degree);
  double l2 = 0.0, h1 = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cells()[c];
    const P1Element e = shape_p1(mesh.cell_points(static_cast<int>(c)));
    Vec2 grad_h{};
    for (int i = 0; i < 3; ++i) grad_h += u_h[cell[i]] * e.grads[i];
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& bary = rule.points[q];
      const Vec2 x = e.map(bary);
      const double uh = bary[0] * u_h[cell[0]] + bary[1] * u_h[cell[1]] + bary[2] * u_h[cell[2]];
      const double w = rule.weights[q] * 2.0 * e.area;
      const double diff = exact.value(x) - uh;
      l2 += w * diff * diff;
      if (exact.grad) {
        const Vec2 dg = exact.grad(x) - grad_h;
        h1 += w * dot(dg, dg);
      }
    }
  }
  return {std::sqrt(l2), std::sqrt(h1)};
}

Eigen::VectorXd interpolate(const Mesh& mesh, const std::function<double(const Vec2&)>& f) {
  Eigen::VectorXd u(mesh.num_vertices());
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) u[v] = f(mesh.vertices()[v]);
  return u;
}

ConsistencyTerms poisson_consistency_terms(const PoissonProblem& problem, const ScalarField& exact,
                                           int cell_degree) {
  require_dirichlet(problem.edges);
  const Mesh& mesh = problem.mesh;
  const auto n = static_cast<Eigen::Index>(mesh.num_vertices());
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd l = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd pred = Eigen::VectorXd::Zero(n);
  const CellRule& rule = cell_rule(cell_degree);

  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cells()[c];
    const P1Element e = shape_p1(mesh.cell_points(static_cast<int>(c)));
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& bary = rule.points[q];
      const Vec2 x = e.map(bary);
      const double w = rule.weights[q] * 2.0 * e.area;
      const Vec2 gu = exact.grad(x);
      const double f = problem.forcing(x);
      for (int i = 0; i < 3; ++i) {
        a[cell[i]] += w * dot(gu, e.grads[i]);
        l[cell[i]] += w * f * bary[i];
      }
    }
  }

  for (const auto& ed : problem.edges) {
    const auto& cell = mesh.cells()[ed.edge.cell];
    const P1Element e = shape_p1(mesh.cell_points(ed.edge.cell));
    const double penalty = problem.alpha / ed.h_perp;
    for (const auto& bp : ed.points) {
      const auto phi = e.values(bp.x);
      const auto s = eval_shifted(phi, e.grads, bp.d);
      const Vec2 gu = exact.grad(bp.x);
      const double su = exact.value(bp.x) + dot(gu, bp.d);
      const double ubar = shifted_datum(problem, bp);
      const double gun = dot(gu, ed.normal);
      const double w = bp.weight;
      for (int i = 0; i < 3; ++i) {
        const double gn = dot(e.grads[i], ed.normal);
        const double gd = dot(e.grads[i], bp.d);
        a[cell[i]] += w * (-gun * s[i] - su * gn + penalty * su * s[i] + gun * gd);
        l[cell[i]] += w * (-ubar * gn + penalty * ubar * s[i]);
        pred[cell[i]] += w * (-(su - ubar) * gn + penalty * (su - ubar) * s[i]);
      }
    }
  }
  return {a - l, pred, l};
}

}  // namespace sbm
