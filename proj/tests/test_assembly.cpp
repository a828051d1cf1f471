#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "stokeshp/assembly.hpp"
#include "stokeshp/experiments.hpp"
#include "stokeshp/sparse_linalg.hpp"

using namespace stokeshp;

namespace {

struct Setup {
  Mesh mesh;
  DofLayout layout;
  AssemblyConfig config;
};

Setup make(int dim, int N, int k) {
  Setup s{generate_structured(dim, N, Box::unit(dim)), {}, AssemblyConfig::defaults(dim, k)};
  s.layout = build_layout(s.mesh, k);
  return s;
}

double min_generalized_eig(const SpMat& A, const SpMat& G) {
  Mat Ad(A), Gd(G);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(Ad, Gd);
  return es.eigenvalues().minCoeff();
}

} // namespace

TEST_CASE("velocity block is symmetric positive definite") {
  for (int dim : {2, 3}) {
    Setup s = make(dim, 2, 2);
    SpMat A = assemble_A(s.mesh, s.layout, s.config);
    CHECK(symmetry_defect(A) < 1e-12);
    CHECK_NOTHROW(SpdFactorization{A}); // Cholesky succeeds iff SPD
  }
}

TEST_CASE("default quadrature degree is already exact") {
  // all integrands are polynomial under affine maps, so degree 2k suffices;
  // the default 2k+2 must not change the matrix
  Setup s = make(2, 2, 3);
  AssemblyConfig lower = s.config;
  lower.cell_quad_degree = 2 * 3;
  lower.facet_quad_degree = 2 * 3;
  SpMat A1 = assemble_A(s.mesh, s.layout, s.config);
  SpMat A2 = assemble_A(s.mesh, s.layout, lower);
  SpMat D = A1 - A2;
  double scale = Vec(A1.coeffs()).cwiseAbs().maxCoeff();
  CHECK((D.coeffs().size() == 0 ? 0.0 : Vec(D.coeffs()).cwiseAbs().maxCoeff()) < 1e-11 * scale);
}

TEST_CASE("pressure coupling integrates the divergence") {
  Setup s = make(2, 3, 2);
  SpMat B = assemble_B(s.mesh, s.layout, s.config);
  Vec n0 = nullspace_vector(s.mesh, s.layout);
  Vec ones_p = n0.segment(s.layout.p_offset(), s.layout.n_p);

  // v = (x, 0): b(1, v) = -int div v = -|Omega| = -1
  Vec u = project_velocity(s.mesh, s.layout, s.config, [](const Vec& x) {
    Vec v(2);
    v << x[0], 0.0;
    return v;
  });
  CHECK(ones_p.dot(B * u) == doctest::Approx(-1.0).epsilon(1e-12));

  // v = (y, x) is divergence-free
  Vec w = project_velocity(s.mesh, s.layout, s.config, [](const Vec& x) {
    Vec v(2);
    v << x[1], x[0];
    return v;
  });
  CHECK((B * w).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("multiplier coupling sees only normal jumps") {
  Setup s = make(2, 3, 2);
  SpMat C = assemble_C(s.mesh, s.layout, s.config);
  Vec n0 = nullspace_vector(s.mesh, s.layout);
  Vec ones_l = n0.tail(s.layout.n_l);

  // continuous constant field: no interior jumps, and the boundary part
  // integrates n_x over the closed boundary, which vanishes
  Vec u = project_velocity(s.mesh, s.layout, s.config, [](const Vec&) {
    Vec v(2);
    v << 1.0, 0.0;
    return v;
  });
  CHECK(check_normal_jumps(s.mesh, s.layout, s.config, u) < 1e-12);
  CHECK(std::abs(ones_l.dot(C * u)) < 1e-12);

  // u = (x, y): sum_F int_F [u.n] 1 = closed-boundary flux = int div u = 2
  Vec w = project_velocity(s.mesh, s.layout, s.config, [](const Vec& x) { return Vec(x); });
  CHECK(ones_l.dot(C * w) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("mass matrices against closed forms") {
  for (int dim : {2, 3}) {
    Setup s = make(dim, 2, 2);
    SpMat Q = assemble_mass_Q(s.mesh, s.layout, s.config);
    Vec p = project_pressure(s.mesh, s.layout, s.config, [](const Vec& x) { return x[0]; });
    CHECK(p.dot(Q * p) == doctest::Approx(1.0 / 3.0).epsilon(1e-12)); // int x^2

    SpMat M = assemble_mass_M(s.mesh, s.layout, s.config);
    Vec n0 = nullspace_vector(s.mesh, s.layout);
    Vec ones_l = n0.tail(s.layout.n_l);
    double exact = 0.0;
    for (const auto& f : s.mesh.facets) exact += f.h_F * f.measure;
    CHECK(ones_l.dot(M * ones_l) == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("broken H1 norm matches its gram matrix") {
  Setup s = make(2, 2, 2);
  SpMat G = assemble_gram_1h(s.mesh, s.layout, s.config);
  CHECK(symmetry_defect(G) < 1e-12);
  Vec u = project_velocity(s.mesh, s.layout, s.config, [](const Vec& x) {
    Vec v(2);
    v << std::sin(x[0] + x[1]), x[0] * x[1];
    return v;
  });
  double norm = compute_norm_1h(s.mesh, s.layout, s.config, u);
  CHECK(norm * norm == doctest::Approx(u.dot(G * u)).epsilon(1e-11));
}

TEST_CASE("coercivity constant is mesh independent") {
  double prev = 0.0;
  for (int N : {2, 4}) {
    Setup s = make(2, N, 2);
    SpMat A = assemble_A(s.mesh, s.layout, s.config);
    SpMat G = assemble_gram_1h(s.mesh, s.layout, s.config);
    double c = min_generalized_eig(A, G);
    CHECK(c > 0.0);
    if (prev > 0.0) CHECK(std::abs(c - prev) / prev < 0.2);
    prev = c;
  }
}

TEST_CASE("nullspace identity") {
  for (int dim : {2, 3}) {
    Setup s = make(dim, 2, 2);
    BlockSystem sys = assemble_system(s.mesh, s.layout, s.config, default_manufactured(dim));
    SpMat full = sys.full();
    double scale = Vec(full.coeffs()).cwiseAbs().maxCoeff();
    CHECK((full * sys.nullspace).cwiseAbs().maxCoeff() <= 1e-11 * scale);
    // apply() agrees with the materialized operator
    Vec x = Vec::LinSpaced(s.layout.total(), -1.0, 1.0);
    CHECK((sys.apply(x) - full * x).cwiseAbs().maxCoeff() < 1e-11 * scale);
  }
}

TEST_CASE("divergence diagnostics") {
  Setup s = make(2, 3, 2);
  Vec u = project_velocity(s.mesh, s.layout, s.config, [](const Vec& x) { return Vec(x); });
  CHECK(check_divergence(s.mesh, s.layout, s.config, u) == doctest::Approx(2.0).epsilon(1e-12));
  Vec w = project_velocity(s.mesh, s.layout, s.config, [](const Vec& x) {
    Vec v(2);
    v << x[1], x[0];
    return v;
  });
  CHECK(check_divergence(s.mesh, s.layout, s.config, w) < 1e-12);
  // the diagnostic reacts to a single perturbed dof
  w[3] += 1e-3;
  CHECK(check_divergence(s.mesh, s.layout, s.config, w) > 1e-6);
}

TEST_CASE("polynomial solutions are reproduced exactly") {
  for (int dim : {2, 3}) {
    Mesh mesh = generate_structured(dim, 2, Box::unit(dim));
    PrecondConfig pc; // exact inner solves, block diagonal
    SolvedSystem sol = solve_system(mesh, 2, 0.0, pc, ms_poly(dim), 1e-12, 500);
    CHECK(sol.report.converged);
    CHECK(sol.report.u_l2_error < 1e-9);
    CHECK(sol.report.p_l2_error < 1e-8);
    CHECK(sol.report.divergence_max < 1e-9);
    CHECK(sol.report.normal_jump_max < 1e-9);
  }
}

TEST_CASE("projection errors vanish for fields in the space") {
  Setup s = make(2, 2, 2);
  ManufacturedSolution ms = ms_poly(2);
  Vec x = Vec::Zero(s.layout.total());
  x.head(s.layout.n_u) = project_velocity(s.mesh, s.layout, s.config, ms.velocity);
  x.segment(s.layout.p_offset(), s.layout.n_p) =
      project_pressure(s.mesh, s.layout, s.config, ms.pressure);
  FieldErrors err = compute_errors(s.mesh, s.layout, s.config, x, ms);
  CHECK(err.u_l2 < 1e-12);
  CHECK(err.p_l2 < 1e-12);
  CHECK(err.u_max > 0.1);
}
