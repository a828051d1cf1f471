#include <doctest.h>

#include "stokeshp/spaces.hpp"

using namespace stokeshp;

TEST_CASE("2d layout counts") {
  Mesh mesh = generate_structured(2, 1, Box::unit(2)); // 2 cells, 5 facets
  DofLayout l = build_layout(mesh, 2);
  CHECK(l.nb_u == 6);
  CHECK(l.nb_p == 3);
  CHECK(l.nb_l == 3);
  CHECK(l.n_u == 2 * 2 * 6);
  CHECK(l.n_p == 2 * 3);
  CHECK(l.n_l == 5 * 3);
  CHECK(l.total() == l.n_u + l.n_p + l.n_l);
}

TEST_CASE("3d layout counts") {
  Mesh mesh = generate_structured(3, 1, Box::unit(3)); // 6 tets
  DofLayout l = build_layout(mesh, 2);
  CHECK(l.nb_u == 10); // P2 in 3d
  CHECK(l.nb_p == 4);  // P1 in 3d
  CHECK(l.nb_l == 6);  // P2 on triangles
  CHECK(l.n_u == 6 * 3 * 10);
  CHECK(l.n_p == 6 * 4);
  CHECK(l.n_l == mesh.n_facets() * 6);
}

TEST_CASE("reference dof totals") {
  // 2d, k = 4, N = 16: 15360 velocity + 5120 pressure + 4000 multiplier
  Mesh mesh = generate_structured(2, 16, Box::unit(2));
  DofLayout l = build_layout(mesh, 4);
  CHECK(l.n_u == 15360);
  CHECK(l.n_p == 5120);
  CHECK(l.n_l == 4000);
  CHECK(l.total() == 24480);
}

TEST_CASE("dof indices are a disjoint cover") {
  Mesh mesh = generate_structured(2, 2, Box::unit(2));
  DofLayout l = build_layout(mesh, 3);
  std::vector<int> hits(l.total(), 0);
  for (int c = 0; c < l.n_cells; ++c) {
    for (int comp = 0; comp < l.dim; ++comp)
      for (int i = 0; i < l.nb_u; ++i) ++hits[l.u_dof(c, comp, i)];
    for (int i = 0; i < l.nb_p; ++i) ++hits[l.p_dof(c, i)];
  }
  for (int f = 0; f < l.n_facets; ++f)
    for (int i = 0; i < l.nb_l; ++i) ++hits[l.l_dof(f, i)];
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("refinement scaling") {
  for (int N : {2, 4, 8}) {
    Mesh mesh = generate_structured(2, N, Box::unit(2));
    DofLayout l = build_layout(mesh, 2);
    CHECK(l.n_u == 2 * N * N * 2 * 6);
    CHECK(l.n_p == 2 * N * N * 3);
    CHECK(l.n_l == (3 * N * N + 2 * N) * 3);
  }
}

TEST_CASE("invalid order is rejected") {
  Mesh mesh = generate_structured(2, 1, Box::unit(2));
  CHECK_THROWS(build_layout(mesh, 0));
}
