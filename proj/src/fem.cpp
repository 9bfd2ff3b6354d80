#include "sbm/fem.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

namespace sbm {

std::array<double, 3> P1Element::values(const Vec2& x) const {
  std::array<double, 3> v{};
  // phi_i(x) = phi_i(p_j) + grad_i . (x - p_j), anchored at the opposite vertex.
  for (int i = 0; i < 3; ++i) v[i] = dot(grads[i], x - points[(i + 1) % 3]);
  return v;
}

Vec2 P1Element::map(const std::array<double, 3>& bary) const {
  return bary[0] * points[0] + bary[1] * points[1] + bary[2] * points[2];
}

P1Element shape_p1(const std::array<Vec2, 3>& points) {
  P1Element e;
  e.points = points;
  const double twice_area = cross(points[1] - points[0], points[2] - points[0]);
  if (!(twice_area > 0.0)) throw Error("shape_p1: degenerate cell");
  e.area = 0.5 * twice_area;
  for (int i = 0; i < 3; ++i) {
    // Gradient of the barycentric coordinate of vertex i: inward normal of
    // the opposite edge over twice the area.
    const Vec2 opp = points[(i + 2) % 3] - points[(i + 1) % 3];
    e.grads[i] = (1.0 / twice_area) * Vec2{-opp.y, opp.x};
  }
  return e;
}

std::array<double, 3> eval_shifted(const std::array<double, 3>& values,
                                   const std::array<Vec2, 3>& grads, const Vec2& d) {
  return {values[0] + dot(grads[0], d), values[1] + dot(grads[1], d), values[2] + dot(grads[2], d)};
}

DofMap::DofMap(std::size_t num_vertices, int components, bool multiplier)
    : num_vertices_(num_vertices), components_(components), multiplier_(multiplier) {
  if (components < 1) throw Error("dofmap: need at least one component");
}

Assembler::Assembler(const DofMap& dofs) : dofs_(dofs), rhs_(Eigen::VectorXd::Zero(dofs.size())) {}

void Assembler::add(int row, int col, double value) {
  const int n = static_cast<int>(dofs_.size());
  if (row < 0 || row >= n || col < 0 || col >= n) throw Error("assemble: index out of range");
  entries_.push_back({row, col, value});
}

void Assembler::add_rhs(int row, double value) {
  if (row < 0 || row >= static_cast<int>(dofs_.size())) throw Error("assemble: index out of range");
  rhs_[row] += value;
}

void Assembler::add(const LocalContribution& c) {
  if (c.matrix.size() != c.rows.size() * c.cols.size()) {
    throw Error("assemble: local matrix size does not match its index lists");
  }
  if (!c.rhs.empty() && c.rhs.size() != c.rows.size()) {
    throw Error("assemble: local rhs size does not match its row list");
  }
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    for (std::size_t j = 0; j < c.cols.size(); ++j) add(c.rows[i], c.cols[j], c.matrix[i * c.cols.size() + j]);
    if (!c.rhs.empty()) add_rhs(c.rows[i], c.rhs[i]);
  }
}

SparseSystem Assembler::finalize() && {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.row, a.col, a.value) < std::tie(b.row, b.col, b.value);
  });
  const int n = static_cast<int>(dofs_.size());
  std::vector<int> outer(n + 1, 0);
  std::vector<int> inner;
  std::vector<double> values;
  std::size_t k = 0;
  while (k < entries_.size()) {
    const int row = entries_[k].row;
    const int col = entries_[k].col;
    double sum = 0.0;
    for (; k < entries_.size() && entries_[k].row == row && entries_[k].col == col; ++k) {
      sum += entries_[k].value;
    }
    if (sum != 0.0) {
      inner.push_back(col);
      values.push_back(sum);
      ++outer[row + 1];
    }
  }
  for (int r = 0; r < n; ++r) outer[r + 1] += outer[r];

  SparseSystem sys;
  sys.dofs = dofs_;
  sys.rhs = std::move(rhs_);
  sys.matrix.resize(n, n);
  sys.matrix.reserve(static_cast<Eigen::Index>(values.size()));
  std::copy(outer.begin(), outer.end(), sys.matrix.outerIndexPtr());
  std::copy(inner.begin(), inner.end(), sys.matrix.innerIndexPtr());
  std::copy(values.begin(), values.end(), sys.matrix.valuePtr());
  sys.matrix.resizeNonZeros(static_cast<Eigen::Index>(values.size()));
  entries_.clear();
  return sys;
}

SparseSystem assemble(std::span<const LocalContribution> contributions, const DofMap& dofs) {
  Assembler a(dofs);
  for (const auto& c : contributions) a.add(c);
  return std::move(a).finalize();
}

SolverKind parse_solver(const std::string& name) {
  if (name == "direct") return SolverKind::Direct;
  if (name == "gmres") return SolverKind::Gmres;
  throw Error("unknown solver '" + name + "' (expected direct or gmres)");
}

double relative_residual(const CsrMatrix& a, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const double r = (a * x - b).norm();
  const double bn = b.norm();
  return bn > 0.0 ? r / bn : r;
}

SolveResult solve(const SparseSystem& system, SolverKind kind) {
  const auto n = system.matrix.rows();
  if (system.matrix.cols() != n || system.rhs.size() != n) throw Error("solve: system is not square");
  SolveResult result;
  if (n == 0) return result;
  if (system.rhs.norm() == 0.0) {
    result.x = Eigen::VectorXd::Zero(n);
    return result;
  }
  const Eigen::SparseMatrix<double> a = system.matrix;  // column-major copy

  if (kind == SolverKind::Direct) {
    // Ruiz equilibration: saddle-point blocks scale with different powers of
    // h, and unscaled pivoting loses digits in the pressure.
    Eigen::VectorXd dr = Eigen::VectorXd::Ones(n), dc = Eigen::VectorXd::Ones(n);
    Eigen::SparseMatrix<double> s = a;
    for (int sweep = 0; sweep < 10; ++sweep) {
      Eigen::VectorXd rmax = Eigen::VectorXd::Zero(n), cmax = Eigen::VectorXd::Zero(n);
      for (int k = 0; k < s.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(s, k); it; ++it) {
          rmax[it.row()] = std::max(rmax[it.row()], std::abs(it.value()));
          cmax[it.col()] = std::max(cmax[it.col()], std::abs(it.value()));
        }
      }
      for (Eigen::Index i = 0; i < n; ++i) {
        rmax[i] = rmax[i] > 0.0 ? 1.0 / std::sqrt(rmax[i]) : 1.0;
        cmax[i] = cmax[i] > 0.0 ? 1.0 / std::sqrt(cmax[i]) : 1.0;
      }
      s = rmax.asDiagonal() * s * cmax.asDiagonal();
      dr = dr.cwiseProduct(rmax);
      dc = dc.cwiseProduct(cmax);
    }
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(s);
    lu.factorize(s);
    if (lu.info() != Eigen::Success) throw Error("solve: sparse LU failed (singular matrix): " + lu.lastErrorMessage());
    const auto apply = [&](const Eigen::VectorXd& r) -> Eigen::VectorXd {
      return dc.cwiseProduct(lu.solve(dr.cwiseProduct(r)));
    };
    result.x = apply(system.rhs);
    result.relative_residual = relative_residual(system.matrix, result.x, system.rhs);
    // A few rounds of iterative refinement recover digits lost to pivoting.
    for (int it = 0; it < 3 && result.relative_residual > 1e-13; ++it) {
      const Eigen::VectorXd r = system.rhs - system.matrix * result.x;
      result.x += apply(r);
      result.relative_residual = relative_residual(system.matrix, result.x, system.rhs);
      ++result.iterations;
    }
    if (!std::isfinite(result.relative_residual) || result.relative_residual > 1e-6) {
      throw Error("solve: direct solve is inaccurate (relative residual " +
                  std::to_string(result.relative_residual) + "); matrix is numerically singular");
    }
    return result;
  }

  Eigen::GMRES<Eigen::SparseMatrix<double>, Eigen::DiagonalPreconditioner<double>> gmres;
  gmres.setTolerance(1e-13);
  gmres.setMaxIterations(10000);
  gmres.set_restart(200);
  gmres.compute(a);
  result.x = gmres.solve(system.rhs);
  result.iterations = static_cast<int>(gmres.iterations());
  result.relative_residual = relative_residual(system.matrix, result.x, system.rhs);
  if (gmres.info() != Eigen::Success || !(result.relative_residual <= 1e-12)) {
    throw Error("solve: GMRES did not converge within 10000 iterations (relative residual " +
                std::to_string(result.relative_residual) + ")");
  }
  return result;
}

}  // namespace sbm
