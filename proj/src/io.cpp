#include "sbm/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <unsupported/Eigen/SparseExtra>

namespace sbm {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

std::string vtk_name(std::string name) {
  for (char& ch : name) {
    if (ch == ' ') ch = '_';
  }
  return name;
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
  if (!out) throw Error("write failed: " + path.string());
}

void write_vtk(const std::filesystem::path& path, const Mesh& mesh, const std::vector<NamedScalar>& scalars,
               const std::vector<NamedVector>& vectors) {
  const auto nv = static_cast<Eigen::Index>(mesh.num_vertices());
  for (const auto& [name, f] : scalars) {
    if (f.size() != nv) throw Error("write_vtk: field '" + name + "' has wrong size");
  }
  for (const auto& [name, f] : vectors) {
    if (f[0].size() != nv || f[1].size() != nv) throw Error("write_vtk: field '" + name + "' has wrong size");
  }
  auto out = open_out(path);
  out << "# vtk DataFile Version 3.0\nsbm\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const auto& v : mesh.vertices()) out << v.x << ' ' << v.y << " 0\n";
  out << "CELLS " << mesh.num_cells() << ' ' << 4 * mesh.num_cells() << '\n';
  for (const auto& c : mesh.cells()) out << "3 " << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  out << "CELL_TYPES " << mesh.num_cells() << '\n';
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) out << "5\n";
  if (scalars.empty() && vectors.empty()) return;
  out << "POINT_DATA " << mesh.num_vertices() << '\n';
  for (const auto& [name, f] : scalars) {
    out << "SCALARS " << vtk_name(name) << " double 1\nLOOKUP_TABLE default\n";
    for (Eigen::Index i = 0; i < nv; ++i) out << f[i] << '\n';
  }
  for (const auto& [name, f] : vectors) {
    out << "VECTORS " << vtk_name(name) << " double\n";
    for (Eigen::Index i = 0; i < nv; ++i) out << f[0][i] << ' ' << f[1][i] << " 0\n";
  }
}

std::string mesh_dump(const Mesh& mesh) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "vertices " << mesh.num_vertices() << '\n';
  for (const auto& v : mesh.vertices()) out << v.x << ' ' << v.y << '\n';
  out << "cells " << mesh.num_cells() << '\n';
  for (const auto& c : mesh.cells()) out << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  return out.str();
}

void write_mesh_dump(const std::filesystem::path& path, const Mesh& mesh) { write_text(path, mesh_dump(mesh)); }

Mesh read_mesh_dump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::string key;
  std::size_t n = 0;
  if (!(in >> key >> n) || key != "vertices") throw Error("mesh dump: expected 'vertices N'");
  std::vector<Vec2> vertices(n);
  for (auto& v : vertices) {
    if (!(in >> v.x >> v.y)) throw Error("mesh dump: truncated vertex list");
  }
  if (!(in >> key >> n) || key != "cells") throw Error("mesh dump: expected 'cells M'");
  std::vector<std::array<int, 3>> cells(n);
  for (auto& c : cells) {
    if (!(in >> c[0] >> c[1] >> c[2])) throw Error("mesh dump: truncated cell list");
  }
  return Mesh(std::move(vertices), std::move(cells));
}

void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& a) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  if (!Eigen::saveMarket(a, path.string())) throw Error("cannot write " + path.string());
}

DomainGeometry parse_polygon(const std::string& text) {
  std::istringstream in(text);
  std::vector<Vec2> vertices;
  std::vector<BoundaryTag> tags;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    Vec2 v;
    std::string tag;
    if (!(ls >> v.x)) continue;
    if (!(ls >> v.y >> tag)) throw Error("polygon line " + std::to_string(lineno) + ": expected 'x y tag'");
    if (tag == "D" || tag == "d" || tag == "dirichlet") {
      tags.push_back(BoundaryTag::Dirichlet);
    } else if (tag == "N" || tag == "n" || tag == "neumann") {
      tags.push_back(BoundaryTag::Neumann);
    } else {
      throw Error("polygon line " + std::to_string(lineno) + ": unknown tag '" + tag + "'");
    }
    vertices.push_back(v);
  }
  return DomainGeometry(std::move(vertices), std::move(tags));
}

DomainGeometry read_polygon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_polygon(ss.str());
}

}  // namespace sbm
