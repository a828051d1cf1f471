#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "stokeshp/gmsh.hpp"
#include "stokeshp/mesh.hpp"

using namespace stokeshp;

namespace {

// Shared-facet bookkeeping must satisfy: (dim+1) faces per cell, each
// interior facet counted twice, each boundary facet once.
void check_facet_invariants(const Mesh& mesh) {
  int interior = 0, boundary = 0;
  for (const auto& f : mesh.facets) {
    CHECK(f.plus_cell >= 0);
    CHECK(f.measure > 0.0);
    CHECK(f.h_F > 0.0);
    CHECK(f.normal.norm() == doctest::Approx(1.0).epsilon(1e-12));
    if (f.is_boundary()) {
      ++boundary;
    } else {
      ++interior;
      CHECK(f.plus_cell < f.minus_cell);
      // normal points from plus into minus
      Eigen::Vector3d d = Eigen::Vector3d::Zero();
      d.head(mesh.dim) =
          mesh.cell_centroid(f.minus_cell) - mesh.cell_centroid(f.plus_cell);
      CHECK(f.normal.dot(d) > 0.0);
    }
  }
  CHECK(2 * interior + boundary == (mesh.dim + 1) * mesh.n_cells());
  CHECK(static_cast<int>(mesh.boundary_facet_ids.size()) == boundary);
}

Mesh rectangular_grid(int nx, int ny) {
  Mesh mesh;
  mesh.dim = 2;
  mesh.vertices.resize(2, (nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      mesh.vertices.col(j * (nx + 1) + i) << double(i) / nx, double(j) / ny;
  mesh.cells.resize(3, 2 * nx * ny);
  int c = 0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      int v00 = j * (nx + 1) + i, v10 = v00 + 1;
      int v01 = v00 + (nx + 1), v11 = v01 + 1;
      mesh.cells.col(c++) << v00, v10, v11;
      mesh.cells.col(c++) << v00, v11, v01;
    }
  mesh.finalize();
  return mesh;
}

} // namespace

TEST_CASE("structured 2d counts and geometry") {
  Mesh mesh = generate_structured(2, 16, Box::unit(2));
  CHECK(mesh.n_cells() == 512);
  CHECK(mesh.n_vertices() == 17 * 17);
  CHECK(mesh.n_facets() == 3 * 16 * 16 + 2 * 16); // 3N^2 + 2N
  CHECK(static_cast<int>(mesh.boundary_facet_ids.size()) == 4 * 16);
  CHECK(mesh.total_volume() == doctest::Approx(1.0).epsilon(1e-13));
  check_facet_invariants(mesh);
  for (int c = 0; c < mesh.n_cells(); ++c)
    CHECK(mesh.cell_jacobian(c).determinant() ==
          doctest::Approx(2.0 * mesh.cell_volume(c)).epsilon(1e-12));
}

TEST_CASE("structured 2d smallest case") {
  Mesh mesh = generate_structured(2, 1, Box::unit(2));
  CHECK(mesh.n_cells() == 2);
  CHECK(mesh.n_facets() == 5);
  CHECK(static_cast<int>(mesh.boundary_facet_ids.size()) == 4);
  // h_F is the edge length in 2d
  for (const auto& f : mesh.facets) CHECK(f.h_F == doctest::Approx(f.measure));
}

TEST_CASE("structured 3d counts and geometry") {
  Mesh mesh = generate_structured(3, 2, Box::unit(3));
  CHECK(mesh.n_cells() == 6 * 8); // Kuhn split: 6 tets per cube
  CHECK(mesh.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(static_cast<int>(mesh.boundary_facet_ids.size()) == 12 * 2 * 2);
  check_facet_invariants(mesh);
  for (const auto& f : mesh.facets)
    CHECK(f.h_F == doctest::Approx(std::sqrt(f.measure)).epsilon(1e-12));
  for (int c = 0; c < mesh.n_cells(); ++c)
    CHECK(mesh.cell_jacobian(c).determinant() ==
          doctest::Approx(6.0 * mesh.cell_volume(c)).epsilon(1e-12));
}

TEST_CASE("structured meshes scale as expected") {
  for (int N : {2, 4}) {
    Mesh m2 = generate_structured(2, N, Box::unit(2));
    CHECK(m2.n_cells() == 2 * N * N);
    Mesh m3 = generate_structured(3, N, Box::unit(3));
    CHECK(m3.n_cells() == 6 * N * N * N);
    CHECK(m3.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("interior jitter keeps the boundary and the topology") {
  Mesh mesh = generate_structured(2, 8, Box::unit(2));
  Mesh jittered = jitter_interior(mesh, 0.2, 42u);
  CHECK(jittered.n_cells() == mesh.n_cells());
  CHECK(jittered.n_facets() == mesh.n_facets());
  CHECK(jittered.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
  check_facet_invariants(jittered);
  bool moved = false;
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    Vec x = mesh.vertices.col(v);
    bool on_boundary = x.minCoeff() < 1e-12 || x.maxCoeff() > 1.0 - 1e-12;
    double d = (jittered.vertices.col(v) - x).norm();
    if (on_boundary)
      CHECK(d == 0.0);
    else if (d > 0)
      moved = true;
  }
  CHECK(moved);
}

TEST_CASE("gmsh v2.2 roundtrip") {
  Mesh mesh = generate_structured(2, 4, Box::unit(2));
  auto path = std::filesystem::temp_directory_path() / "stokeshp_rt22.msh";
  write_gmsh_v22(mesh, path.string());
  Mesh back = read_gmsh(path.string());
  CHECK(back.dim == 2);
  CHECK(back.n_cells() == mesh.n_cells());
  CHECK(back.n_facets() == mesh.n_facets());
  CHECK(back.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
  std::filesystem::remove(path);
}

TEST_CASE("gmsh v2.2 roundtrip 3d") {
  Mesh mesh = generate_structured(3, 2, Box::unit(3));
  auto path = std::filesystem::temp_directory_path() / "stokeshp_rt22_3d.msh";
  write_gmsh_v22(mesh, path.string());
  Mesh back = read_gmsh(path.string());
  CHECK(back.dim == 3);
  CHECK(back.n_cells() == mesh.n_cells());
  CHECK(back.total_volume() == doctest::Approx(1.0).epsilon(1e-12));
  std::filesystem::remove(path);
}

TEST_CASE("gmsh v4.1 ascii") {
  // unit square split along the diagonal, with sparse node tags
  std::istringstream in(R"($MeshFormat
4.1 0 8
$EndMeshFormat
$Nodes
1 4 10 40
2 1 0 4
10
20
30
40
0 0 0
1 0 0
1 1 0
0 1 0
$EndNodes
$Elements
1 2 1 2
2 1 2 2
1 10 20 30
2 10 30 40
$EndElements
)");
  Mesh mesh = read_gmsh(in);
  CHECK(mesh.dim == 2);
  CHECK(mesh.n_vertices() == 4);
  CHECK(mesh.n_cells() == 2);
  CHECK(mesh.n_facets() == 5);
  CHECK(mesh.total_volume() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("gmsh rejects binary files") {
  std::istringstream in("$MeshFormat\n2.2 1 8\n$EndMeshFormat\n");
  CHECK_THROWS(read_gmsh(in));
}

TEST_CASE("gmsh rejects unsupported versions") {
  std::istringstream in("$MeshFormat\n3.0 0 8\n$EndMeshFormat\n");
  CHECK_THROWS(read_gmsh(in));
}

TEST_CASE("gmsh rejects unsupported volume elements") {
  // element type 3 (4-node quadrangle) must be an error, not silently skipped
  std::istringstream in(R"($MeshFormat
2.2 0 8
$EndMeshFormat
$Nodes
4
1 0 0 0
2 1 0 0
3 1 1 0
4 0 1 0
$EndNodes
$Elements
1
1 3 2 0 1 1 2 3 4
$EndElements
)");
  CHECK_THROWS(read_gmsh(in));
}

TEST_CASE("gmsh missing file") { CHECK_THROWS(read_gmsh(std::string("/nonexistent/mesh.msh"))); }

TEST_CASE("large unstructured-style mesh through the reader") {
  // 256 x 136 grid: 69,632 triangles, jittered so it is genuinely unstructured
  Mesh mesh = jitter_interior(rectangular_grid(256, 136), 0.15, 7u);
  CHECK(mesh.n_cells() == 69632);
  auto path = std::filesystem::temp_directory_path() / "stokeshp_big.msh";
  write_gmsh_v22(mesh, path.string());
  Mesh back = read_gmsh(path.string());
  CHECK(back.n_cells() == 69632);
  CHECK(back.n_facets() == mesh.n_facets());
  CHECK(back.total_volume() == doctest::Approx(1.0).epsilon(1e-11));
  std::filesystem::remove(path);
}
