#include "sbm/stokes.hpp"

#include <cmath>
#include <sstream>

#include "sbm/quadrature.hpp"

namespace sbm {

namespace {

double component(const Vec2& v, int a) { return a == 0 ? v.x : v.y; }

double stabilization_length(StabilizationLength kind, const std::array<Vec2, 3>& pts) {
  const ElementMetrics m = triangle_metrics(pts);
  return kind == StabilizationLength::Tau ? m.h_tau : std::sqrt(2.0 * m.area);
}

}  // namespace

SparseSystem assemble_stokes(const StokesProblem& problem) {
  if (!(problem.mu > 0.0) || !(problem.alpha > 0.0) || !(problem.gamma > 0.0)) {
    throw Error("stokes: mu, alpha and gamma must be positive");
  }
  bool has_neumann = false;
  for (const auto& ed : problem.edges) {
    if (ed.tag != BoundaryTag::Neumann) continue;
    has_neumann = true;
    for (const auto& bp : ed.points) {
      if (!bp.is_zero) throw Error("stokes: Neumann edges must be body-fitted (nonzero distance found)");
    }
  }
  const bool zero_mean = problem.gauge == PressureGauge::ZeroMean;
  if (zero_mean && has_neumann) throw Error("stokes: zero-mean pressure gauge with Neumann edges present");
  if (has_neumann && !problem.traction) throw Error("stokes: Neumann edges present but no traction given");

  const Mesh& mesh = problem.mesh;
  const DofMap dofs(mesh.num_vertices(), 3, zero_mean);
  Assembler asm_(dofs);
  const double mu = problem.mu;
  const CellRule& rule = cell_rule(problem.forcing_degree);

  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cells()[c];
    const auto pts = mesh.cell_points(static_cast<int>(c));
    const P1Element e = shape_p1(pts);
    const double h = stabilization_length(problem.stabilization_length, pts);
    const double tau = problem.gamma * h * h / (2.0 * mu);
    const double A = e.area;
    const auto& g = e.grads;

    for (int i = 0; i < 3; ++i) {
      const int pi = dofs.index(cell[i], 2);
      for (int j = 0; j < 3; ++j) {
        const int pj = dofs.index(cell[j], 2);
        for (int b = 0; b < 2; ++b) {
          for (int a = 0; a < 2; ++a) {
            // (2 mu eps(phi_j e_a), eps(phi_i e_b))
            const double v = mu * A * ((a == b ? dot(g[i], g[j]) : 0.0) + component(g[i], a) * component(g[j], b));
            asm_.add(dofs.index(cell[i], b), dofs.index(cell[j], a), v);
          }
          // -(p, div w) and (div u, q); both use int phi = A / 3.
          asm_.add(dofs.index(cell[i], b), pj, -component(g[i], b) * A / 3.0);
          asm_.add(pi, dofs.index(cell[j], b), component(g[j], b) * A / 3.0);
        }
        // Pressure-gradient stabilization. The div(2 mu eps(u_h)) part of the
        // residual vanishes identically for P1 velocities.
        asm_.add(pi, pj, tau * A * dot(g[i], g[j]));
      }
      if (zero_mean) {
        asm_.add(pi, dofs.multiplier(), A / 3.0);
        asm_.add(dofs.multiplier(), pi, A / 3.0);
      }
    }

    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& bary = rule.points[q];
      const double w = rule.weights[q] * 2.0 * A;
      const Vec2 f = problem.forcing(e.map(bary));
      for (int i = 0; i < 3; ++i) {
        asm_.add_rhs(dofs.index(cell[i], 0), w * f.x * bary[i]);
        asm_.add_rhs(dofs.index(cell[i], 1), w * f.y * bary[i]);
        asm_.add_rhs(dofs.index(cell[i], 2), w * tau * dot(f, g[i]));
      }
    }
  }

  for (const auto& ed : problem.edges) {
    const auto& cell = mesh.cells()[ed.edge.cell];
    const P1Element e = shape_p1(mesh.cell_points(ed.edge.cell));
    const auto& g = e.grads;
    const Vec2 n = ed.normal;

    if (ed.tag == BoundaryTag::Neumann) {
      for (const auto& bp : ed.points) {
        const auto phi = e.values(bp.x);
        const Vec2 t = problem.traction(bp.x);
        for (int i = 0; i < 3; ++i) {
          asm_.add_rhs(dofs.index(cell[i], 0), bp.weight * t.x * phi[i]);
          asm_.add_rhs(dofs.index(cell[i], 1), bp.weight * t.y * phi[i]);
        }
      }
      continue;
    }

    const double penalty = problem.alpha * 2.0 * mu / ed.h_perp;
    for (const auto& bp : ed.points) {
      const auto phi = e.values(bp.x);
      const auto s = eval_shifted(phi, g, bp.d);
      const Vec2 ubar = problem.dirichlet(bp.x + bp.d);
      const double w = bp.weight;
      for (int i = 0; i < 3; ++i) {
        const double gn_i = dot(g[i], n);
        const int pi = dofs.index(cell[i], 2);
        for (int j = 0; j < 3; ++j) {
          const double gn_j = dot(g[j], n);
          const int pj = dofs.index(cell[j], 2);
          for (int b = 0; b < 2; ++b) {
            const int row = dofs.index(cell[i], b);
            for (int a = 0; a < 2; ++a) {
              const double delta = a == b ? 1.0 : 0.0;
              // -<2 mu eps(u), w (x) n>
              double v = -phi[i] * mu * (delta * gn_j + component(g[j], b) * component(n, a));
              // -<S_h u (x) n, 2 mu eps(w)>
              v -= s[j] * mu * (delta * gn_i + component(g[i], a) * component(n, b));
              // alpha <2 mu h^-1 S_h u, S_h w>
              v += delta * penalty * s[j] * s[i];
              asm_.add(row, dofs.index(cell[j], a), w * v);
            }
            // +<p, w . n>
            asm_.add(row, pj, w * phi[j] * phi[i] * component(n, b));
          }
          // -<q, u . n> - <(grad(u) d) . n, q> = -<q, S_h u . n>
          for (int a = 0; a < 2; ++a) {
            asm_.add(pi, dofs.index(cell[j], a), -w * phi[i] * s[j] * component(n, a));
          }
        }
        for (int b = 0; b < 2; ++b) {
          const double consistency = mu * (component(ubar, b) * gn_i + dot(ubar, g[i]) * component(n, b));
          asm_.add_rhs(dofs.index(cell[i], b), w * (-consistency + penalty * component(ubar, b) * s[i]));
        }
        asm_.add_rhs(pi, -w * dot(ubar, n) * phi[i]);
      }
    }
  }
  return std::move(asm_).finalize();
}

StabilizationLength parse_stabilization_length(const std::string& name) {
  if (name == "tau") return StabilizationLength::Tau;
  if (name == "area") return StabilizationLength::Area;
  throw Error("unknown stabilization length '" + name + "' (expected tau|area)");
}

std::string to_string(StabilizationLength kind) { return kind == StabilizationLength::Tau ? "tau" : "area"; }

StokesSolution solve_stokes(const StokesProblem& problem, SolverKind solver) {
  const SparseSystem sys = assemble_stokes(problem);
  SolveResult r;
  try {
    r = solve(sys, solver);
  } catch (const Error& err) {
    std::ostringstream msg;
    msg << err.what() << " [stokes: alpha=" << problem.alpha << ", gamma=" << problem.gamma
        << ", mu=" << problem.mu << ", cells=" << problem.mesh.num_cells() << ", h_max=" << max_h(problem.mesh)
        << "]";
    throw Error(msg.str());
  }
  const auto nv = static_cast<Eigen::Index>(problem.mesh.num_vertices());
  StokesSolution sol;
  sol.ux.resize(nv);
  sol.uy.resize(nv);
  sol.p.resize(nv);
  for (Eigen::Index v = 0; v < nv; ++v) {
    sol.ux[v] = r.x[3 * v];
    sol.uy[v] = r.x[3 * v + 1];
    sol.p[v] = r.x[3 * v + 2];
  }
  sol.relative_residual = r.relative_residual;
  return sol;
}

double integrate_p1(const Mesh& mesh, const Eigen::VectorXd& f) {
  double sum = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cells()[c];
    sum += mesh.area(static_cast<int>(c)) * (f[cell[0]] + f[cell[1]] + f[cell[2]]) / 3.0;
  }
  return sum;
}

StokesErrors stokes_error_norms(const Mesh& mesh, const StokesSolution& sol, const VectorField& u,
                                const ScalarField& p, PressureGauge gauge, int degree) {
  const auto nv = mesh.num_vertices();
  if (static_cast<std::size_t>(sol.ux.size()) != nv || static_cast<std::size_t>(sol.uy.size()) != nv ||
      static_cast<std::size_t>(sol.p.size()) != nv) {
    throw Error("stokes_error_norms: field size does not match mesh");
  }
  const CellRule& rule = cell_rule(degree);

  // Mean pressure offset, needed only for the zero-mean gauge.
  double offset = 0.0;
  if (gauge == PressureGauge::ZeroMean) {
    double integral = 0.0;
    for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
      const auto& cell = mesh.cells()[c];
      const P1Element e = shape_p1(mesh.cell_points(static_cast<int>(c)));
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const auto& b = rule.points[q];
        const double ph = b[0] * sol.p[cell[0]] + b[1] * sol.p[cell[1]] + b[2] * sol.p[cell[2]];
        integral += rule.weights[q] * 2.0 * e.area * (p.value(e.map(b)) - ph);
      }
    }
    offset = integral / mesh.total_area();
  }

  StokesErrors err;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cells()[c];
    const P1Element e = shape_p1(mesh.cell_points(static_cast<int>(c)));
    Mat2 grad_h;
    for (int i = 0; i < 3; ++i) {
      grad_h.xx += sol.ux[cell[i]] * e.grads[i].x;
      grad_h.xy += sol.ux[cell[i]] * e.grads[i].y;
      grad_h.yx += sol.uy[cell[i]] * e.grads[i].x;
      grad_h.yy += sol.uy[cell[i]] * e.grads[i].y;
    }
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& b = rule.points[q];
      const Vec2 x = e.map(b);
      const double w = rule.weights[q] * 2.0 * e.area;
      const auto interp = [&](const Eigen::VectorXd& f) {
        return b[0] * f[cell[0]] + b[1] * f[cell[1]] + b[2] * f[cell[2]];
      };
      const Vec2 du = u.value(x) - Vec2{interp(sol.ux), interp(sol.uy)};
      err.vel_l2 += w * dot(du, du);
      const Mat2 j = u.jacobian(x);
      const double exx = j.xx - grad_h.xx;
      const double eyy = j.yy - grad_h.yy;
      const double exy = 0.5 * ((j.xy - grad_h.xy) + (j.yx - grad_h.yx));
      err.strain_l2 += w * (exx * exx + eyy * eyy + 2.0 * exy * exy);
      const double dp = p.value(x) - interp(sol.p) - offset;
      err.pres_l2 += w * dp * dp;
    }
  }
  err.vel_l2 = std::sqrt(err.vel_l2);
  err.strain_l2 = std::sqrt(err.strain_l2);
  err.pres_l2 = std::sqrt(err.pres_l2);
  return err;
}

Eigen::SparseMatrix<double> velocity_block(const SparseSystem& system) {
  const int nv = static_cast<int>(system.dofs.num_vertices());
  if (system.dofs.components() != 3) throw Error("velocity_block: not a Stokes system");
  std::vector<Eigen::Triplet<double>> t;
  const auto& m = system.matrix;
  for (int row = 0; row < m.outerSize(); ++row) {
    if (row >= 3 * nv || row % 3 == 2) continue;
    for (CsrMatrix::InnerIterator it(m, row); it; ++it) {
      const int col = static_cast<int>(it.col());
      if (col >= 3 * nv || col % 3 == 2) continue;
      t.emplace_back(2 * (row / 3) + row % 3, 2 * (col / 3) + col % 3, it.value());
    }
  }
  Eigen::SparseMatrix<double> block(2 * nv, 2 * nv);
  block.setFromTriplets(t.begin(), t.end());
  return block;
}

}  // namespace sbm
