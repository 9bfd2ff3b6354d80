#include "sbm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <utility>

#include "sbm/geometry.hpp"

namespace sbm {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * cross(b - a, c - a);
}

}  // namespace

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> cells)
    : vertices_(std::move(vertices)), cells_(std::move(cells)) {
  const int nv = static_cast<int>(vertices_.size());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (int v : cells_[c]) {
      if (v < 0 || v >= nv) throw Error("mesh: cell " + std::to_string(c) + " has an invalid vertex");
    }
    if (!(area(static_cast<int>(c)) > 0.0)) {
      throw Error("mesh: cell " + std::to_string(c) + " has non-positive signed area");
    }
  }

  // Directed edge (a, b) -> owner. A conforming mesh has each undirected
  // edge at most twice, once per direction.
  std::map<std::pair<int, int>, BoundaryEdge> directed;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (int e = 0; e < 3; ++e) {
      const int a = cells_[c][e];
      const int b = cells_[c][(e + 1) % 3];
      if (!directed.emplace(std::pair{a, b}, BoundaryEdge{static_cast<int>(c), e}).second) {
        throw Error("mesh: edge shared with inconsistent orientation or by more than two cells");
      }
    }
  }
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (int e = 0; e < 3; ++e) {
      const int a = cells_[c][e];
      const int b = cells_[c][(e + 1) % 3];
      if (!directed.contains({b, a})) boundary_edges_.push_back({static_cast<int>(c), e});
    }
  }

  // Boundary loops close iff every vertex has as many outgoing as incoming
  // boundary edges.
  std::vector<int> balance(vertices_.size(), 0);
  for (const auto& be : boundary_edges_) {
    const auto [a, b] = edge_vertices(be);
    ++balance[a];
    --balance[b];
  }
  if (std::any_of(balance.begin(), balance.end(), [](int x) { return x != 0; })) {
    throw Error("mesh: boundary edges do not form closed loops");
  }

  vc_offsets_.assign(vertices_.size() + 1, 0);
  for (const auto& cell : cells_) {
    for (int v : cell) ++vc_offsets_[v + 1];
  }
  std::partial_sum(vc_offsets_.begin(), vc_offsets_.end(), vc_offsets_.begin());
  vc_cells_.resize(vc_offsets_.back());
  std::vector<int> fill(vc_offsets_.begin(), vc_offsets_.end() - 1);
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (int v : cells_[c]) vc_cells_[fill[v]++] = static_cast<int>(c);
  }
}

std::span<const int> Mesh::vertex_cells(int v) const {
  return {vc_cells_.data() + vc_offsets_[v], vc_cells_.data() + vc_offsets_[v + 1]};
}

std::array<Vec2, 3> Mesh::cell_points(int c) const {
  const auto& cell = cells_[c];
  return {vertices_[cell[0]], vertices_[cell[1]], vertices_[cell[2]]};
}

Vec2 Mesh::centroid(int c) const {
  const auto p = cell_points(c);
  return (1.0 / 3.0) * (p[0] + p[1] + p[2]);
}

double Mesh::area(int c) const {
  const auto p = cell_points(c);
  return signed_area(p[0], p[1], p[2]);
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (std::size_t c = 0; c < cells_.size(); ++c) sum += area(static_cast<int>(c));
  return sum;
}

std::array<int, 2> Mesh::edge_vertices(const BoundaryEdge& e) const {
  const auto& cell = cells_[e.cell];
  return {cell[e.local], cell[(e.local + 1) % 3]};
}

Vec2 Mesh::edge_normal(const BoundaryEdge& e) const {
  const auto [a, b] = edge_vertices(e);
  return normalized(right_perp(vertices_[b] - vertices_[a]));
}

double Mesh::edge_length(const BoundaryEdge& e) const {
  const auto [a, b] = edge_vertices(e);
  return norm(vertices_[b] - vertices_[a]);
}

Mesh build_rect_grid(const BBox& bbox, int nx, int ny) {
  if (!(bbox.width() > 0.0) || !(bbox.height() > 0.0)) throw Error("grid: degenerate bounding box");
  if (nx < 1 || ny < 1) throw Error("grid: need at least one rectangle per direction");

  const double dx = bbox.width() / nx;
  const double dy = bbox.height() / ny;
  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1) + static_cast<std::size_t>(nx) * ny);
  // Coordinates from integer multiples so that shared lines are bitwise equal.
  for (int j = 0; j <= ny; ++j) {
    const double y = j == ny ? bbox.hi.y : bbox.lo.y + j * dy;
    for (int i = 0; i <= nx; ++i) {
      const double x = i == nx ? bbox.hi.x : bbox.lo.x + i * dx;
      vertices.push_back({x, y});
    }
  }
  const int center0 = static_cast<int>(vertices.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      vertices.push_back({bbox.lo.x + (i + 0.5) * dx, bbox.lo.y + (j + 0.5) * dy});
    }
  }

  std::vector<std::array<int, 3>> cells;
  cells.reserve(static_cast<std::size_t>(4) * nx * ny);
  const auto corner = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int bl = corner(i, j), br = corner(i + 1, j);
      const int tl = corner(i, j + 1), tr = corner(i + 1, j + 1);
      const int c = center0 + j * nx + i;
      cells.push_back({bl, br, c});
      cells.push_back({br, tr, c});
      cells.push_back({tr, tl, c});
      cells.push_back({tl, bl, c});
    }
  }
  return Mesh(std::move(vertices), std::move(cells));
}

Mesh build_background_grid(const BBox& bbox, int n_long, double aspect, Orientation orientation) {
  if (n_long < 1) throw Error("grid: n_long must be >= 1");
  if (!(aspect >= 1.0)) throw Error("grid: aspect must be >= 1");
  if (!(bbox.width() > 0.0) || !(bbox.height() > 0.0)) throw Error("grid: degenerate bounding box");

  const bool tall = orientation == Orientation::Tall;
  const double long_extent = tall ? bbox.height() : bbox.width();
  const double short_extent = tall ? bbox.width() : bbox.height();
  const double short_side = long_extent / n_long / aspect;
  const double n_short_real = short_extent / short_side;
  const int n_short = static_cast<int>(std::lround(n_short_real));
  if (n_short < 1 || std::abs(n_short_real - n_short) > 1e-9 * n_short_real) {
    throw Error("grid: bounding box is not an integer number of rectangles of the requested aspect");
  }
  return tall ? build_rect_grid(bbox, n_short, n_long) : build_rect_grid(bbox, n_long, n_short);
}

Mesh extract_surrogate(const Mesh& mesh, const DomainGeometry& geom, double tol) {
  if (tol < 0.0) throw Error("surrogate: tolerance must be non-negative");
  const auto& verts = mesh.vertices();
  std::vector<char> vertex_inside(verts.size());
  for (std::size_t v = 0; v < verts.size(); ++v) vertex_inside[v] = geom.contains(verts[v], tol);

  std::vector<int> kept;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& cell = mesh.cells()[c];
    if (vertex_inside[cell[0]] && vertex_inside[cell[1]] && vertex_inside[cell[2]] &&
        geom.contains(mesh.centroid(static_cast<int>(c)), tol)) {
      kept.push_back(static_cast<int>(c));
    }
  }
  if (kept.empty()) throw Error("surrogate: empty surrogate (no cell inside the domain)");

  std::vector<int> renumber(verts.size(), -1);
  for (int c : kept) {
    for (int v : mesh.cells()[c]) renumber[v] = 0;
  }
  std::vector<Vec2> new_vertices;
  for (std::size_t v = 0; v < verts.size(); ++v) {
    if (renumber[v] == 0) {
      renumber[v] = static_cast<int>(new_vertices.size());
      new_vertices.push_back(verts[v]);
    }
  }
  std::vector<std::array<int, 3>> new_cells;
  new_cells.reserve(kept.size());
  for (int c : kept) {
    const auto& cell = mesh.cells()[c];
    new_cells.push_back({renumber[cell[0]], renumber[cell[1]], renumber[cell[2]]});
  }
  Mesh surrogate(std::move(new_vertices), std::move(new_cells));

  // Connectivity through shared edges.
  std::map<std::pair<int, int>, int> edge_owner;
  for (std::size_t c = 0; c < surrogate.num_cells(); ++c) {
    const auto& cell = surrogate.cells()[c];
    for (int e = 0; e < 3; ++e) edge_owner[{cell[e], cell[(e + 1) % 3]}] = static_cast<int>(c);
  }
  std::vector<char> seen(surrogate.num_cells(), 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const int c = frontier.front();
    frontier.pop();
    const auto& cell = surrogate.cells()[c];
    for (int e = 0; e < 3; ++e) {
      auto it = edge_owner.find({cell[(e + 1) % 3], cell[e]});
      if (it != edge_owner.end() && !seen[it->second]) {
        seen[it->second] = 1;
        ++reached;
        frontier.push(it->second);
      }
    }
  }
  if (reached != surrogate.num_cells()) throw Error("surrogate: surrogate domain is disconnected");
  return surrogate;
}

ElementMetrics triangle_metrics(const std::array<Vec2, 3>& p) {
  const double a = norm(p[1] - p[2]);
  const double b = norm(p[2] - p[0]);
  const double c = norm(p[0] - p[1]);
  const double area = signed_area(p[0], p[1], p[2]);
  if (!(area > 0.0)) throw Error("metrics: degenerate cell");
  ElementMetrics m;
  m.area = area;
  m.h_T = a * b * c / (2.0 * area);       // 2R, R = abc / (4 area)
  m.h_T_i = 4.0 * area / (a + b + c);     // 2r, r = area / s
  m.h_tau = std::sqrt(m.h_T * m.h_T_i);
  return m;
}

std::vector<ElementMetrics> compute_metrics(const Mesh& mesh) {
  std::vector<ElementMetrics> out;
  out.reserve(mesh.num_cells());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    out.push_back(triangle_metrics(mesh.cell_points(static_cast<int>(c))));
  }
  return out;
}

double h_perp(const Mesh& mesh, const BoundaryEdge& e) {
  return mesh.area(e.cell) / mesh.edge_length(e);
}

double max_h(const Mesh& mesh) {
  double h = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    h = std::max(h, triangle_metrics(mesh.cell_points(static_cast<int>(c))).h_T);
  }
  return h;
}

}  // namespace sbm
