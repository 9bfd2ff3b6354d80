#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/SparseExtra>

#include "sbm/io.hpp"
#include "sbm/poisson.hpp"
#include "support.hpp"

using namespace sbm;
namespace fs = std::filesystem;

namespace {

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("sbm_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_F(IoTest, MeshDumpRoundTrip) {
  const Mesh m = test::benchmark_level(4e-2).surrogate;
  write_mesh_dump(dir_ / "mesh.txt", m);
  const Mesh r = read_mesh_dump(dir_ / "mesh.txt");
  EXPECT_EQ(r.cells(), m.cells());
  ASSERT_EQ(r.num_vertices(), m.num_vertices());
  for (std::size_t k = 0; k < m.num_vertices(); ++k) EXPECT_EQ(r.vertices()[k], m.vertices()[k]);
}

TEST_F(IoTest, MeshDumpRejectsGarbage) {
  write_text(dir_ / "bad.txt", "vertices 3\n0 0\n1 0\n");
  EXPECT_THROW(read_mesh_dump(dir_ / "bad.txt"), Error);
  EXPECT_THROW(read_mesh_dump(dir_ / "missing.txt"), Error);
}

TEST_F(IoTest, VtkLayout) {
  const Mesh m = build_rect_grid({{0, 0}, {1, 1}}, 1, 1);
  const Eigen::VectorXd s = interpolate(m, [](const Vec2& x) { return x.x; });
  write_vtk(dir_ / "m.vtk", m, {{"u", s}}, {{"vel", {s, s}}});
  const std::string text = slurp(dir_ / "m.vtk");
  EXPECT_EQ(text.rfind("# vtk DataFile Version", 0), 0u);
  EXPECT_NE(text.find("ASCII"), std::string::npos);
  EXPECT_NE(text.find("DATASET UNSTRUCTURED_GRID"), std::string::npos);
  EXPECT_NE(text.find("POINTS 5"), std::string::npos);
  EXPECT_NE(text.find("CELLS 4 16"), std::string::npos);
  EXPECT_NE(text.find("CELL_TYPES 4"), std::string::npos);
  EXPECT_NE(text.find("POINT_DATA 5"), std::string::npos);
  EXPECT_NE(text.find("SCALARS u"), std::string::npos);
  EXPECT_NE(text.find("VECTORS vel"), std::string::npos);
  EXPECT_THROW(write_vtk(dir_ / "bad.vtk", m, {{"u", Eigen::VectorXd::Zero(2)}}), Error);
}

TEST_F(IoTest, MatrixMarketRoundTrip) {
  const auto d = test::benchmark_level(4e-2);
  const PoissonCase c = poisson_trig_case();
  const CsrMatrix a = assemble_poisson({d.surrogate, d.edges, c.forcing, c.u.value}).matrix;
  write_matrix_market(dir_ / "a.mtx", a);
  std::istringstream header(slurp(dir_ / "a.mtx"));
  std::vector<std::string> tokens(5);
  for (auto& t : tokens) header >> t;
  EXPECT_EQ(tokens, (std::vector<std::string>{"%%MatrixMarket", "matrix", "coordinate", "real", "general"}));
  Eigen::SparseMatrix<double> b;
  ASSERT_TRUE(Eigen::loadMarket(b, (dir_ / "a.mtx").string()));
  EXPECT_LT((test::dense(a) - Eigen::MatrixXd(b)).cwiseAbs().maxCoeff(), 1e-15 * test::dense(a).cwiseAbs().maxCoeff());
}

TEST(Polygon, ParsesTagsAndComments) {
  const DomainGeometry g = parse_polygon(
      "# trapezoid\n"
      "0 0 D\n"
      "0.4 0 dirichlet\n"
      "0.6 1 D   # top\n"
      "0 1 N\n");
  ASSERT_EQ(g.num_segments(), 4u);
  EXPECT_EQ(g.vertices()[2], (Vec2{0.6, 1}));
  EXPECT_EQ(g.tags()[3], BoundaryTag::Neumann);
  EXPECT_EQ(g.tags()[1], BoundaryTag::Dirichlet);
  EXPECT_NEAR(g.area(), make_trapezoid({}).area(), 1e-15);
}

TEST(Polygon, Errors) {
  EXPECT_THROW(parse_polygon("0 0 D\n1 0 X\n0 1 D\n"), Error);
  EXPECT_THROW(parse_polygon("0 0 D\n1 0\n0 1 D\n"), Error);
  EXPECT_THROW(parse_polygon("0 0 D\n1 0 D\n"), Error);
  EXPECT_THROW(read_polygon("/nonexistent/poly.txt"), Error);
}
