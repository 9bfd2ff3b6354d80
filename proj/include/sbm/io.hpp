#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sbm/fem.hpp"
#include "sbm/geometry.hpp"
#include "sbm/mesh.hpp"

namespace sbm {

using NamedScalar = std::pair<std::string, Eigen::VectorXd>;
using NamedVector = std::pair<std::string, std::array<Eigen::VectorXd, 2>>;

/// Legacy VTK ASCII unstructured grid with optional point data.
void write_vtk(const std::filesystem::path& path, const Mesh& mesh, const std::vector<NamedScalar>& scalars = {},
               const std::vector<NamedVector>& vectors = {});

/// Plain text: "vertices N", N lines "x y", "cells M", M lines "a b c".
void write_mesh_dump(const std::filesystem::path& path, const Mesh& mesh);
std::string mesh_dump(const Mesh& mesh);
Mesh read_mesh_dump(const std::filesystem::path& path);

/// MatrixMarket coordinate real general, 1-based indices.
void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& a);

/// One vertex per line, "x y tag" with tag D|N (or dirichlet|neumann)
/// naming the segment that starts at that vertex. '#' starts a comment.
DomainGeometry read_polygon(const std::filesystem::path& path);
DomainGeometry parse_polygon(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace sbm
