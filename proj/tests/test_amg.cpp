#include <doctest.h>

#include <random>

#include "stokeshp/amg.hpp"
#include "stokeshp/assembly.hpp"
#include "stokeshp/sparse_linalg.hpp"

using namespace stokeshp;

namespace {

SpMat poisson_1d(int n) {
  std::vector<Triplet> trip;
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(i, i, 2.0);
    if (i > 0) trip.emplace_back(i, i - 1, -1.0);
    if (i + 1 < n) trip.emplace_back(i, i + 1, -1.0);
  }
  SpMat A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

SpMat poisson_2d(int n) {
  auto id = [n](int i, int j) { return i * n + j; };
  std::vector<Triplet> trip;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      trip.emplace_back(id(i, j), id(i, j), 4.0);
      if (i > 0) trip.emplace_back(id(i, j), id(i - 1, j), -1.0);
      if (i + 1 < n) trip.emplace_back(id(i, j), id(i + 1, j), -1.0);
      if (j > 0) trip.emplace_back(id(i, j), id(i, j - 1), -1.0);
      if (j + 1 < n) trip.emplace_back(id(i, j), id(i, j + 1), -1.0);
    }
  SpMat A(n * n, n * n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

// largest observed A-norm error reduction factor of one V-cycle
double contraction_factor(const SpMat& A, const AmgHierarchy& amg, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist;
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    Vec e(A.rows());
    for (int i = 0; i < e.size(); ++i) e[i] = dist(rng);
    for (int sweep = 0; sweep < 2; ++sweep) {
      Vec r = -spmv(A, e); // residual of x = 0 with exact solution -e
      Vec before = e;
      e += amg.apply(r, 1);
      double num = std::sqrt(e.dot(spmv(A, e)));
      double den = std::sqrt(before.dot(spmv(A, before)));
      worst = std::max(worst, num / den);
    }
  }
  return worst;
}

} // namespace

TEST_CASE("small systems are solved directly") {
  SpMat A = poisson_1d(32); // below the coarsest-size cutoff
  AmgHierarchy amg(A, {});
  CHECK(amg.n_levels() == 1);
  Vec b = Vec::Ones(32);
  Vec x = amg.apply(b, 1);
  CHECK((spmv(A, x) - b).norm() < 1e-11 * b.norm());
}

TEST_CASE("1d poisson coarsens at roughly half rate") {
  AmgOptions opts;
  opts.theta = 0.25;
  AmgHierarchy amg(poisson_1d(128), opts);
  CHECK(amg.n_levels() >= 2);
  double frac = amg.coarse_fraction(0);
  CHECK(frac >= 0.4);
  CHECK(frac <= 0.6);
  // interpolation columns match the coarse level size
  CHECK(amg.interpolation(0).cols() == amg.level_size(1));
  CHECK(amg.interpolation(0).rows() == amg.level_size(0));
}

TEST_CASE("2d poisson v-cycle contracts") {
  SpMat A = poisson_2d(64);
  AmgOptions opts;
  opts.theta = 0.25;
  AmgHierarchy amg(A, opts);
  CHECK(amg.n_levels() >= 3);
  CHECK(contraction_factor(A, amg, 17u) < 0.5);
}

TEST_CASE("the v-cycle operator is symmetric") {
  SpMat A = poisson_2d(24);
  AmgOptions opts;
  opts.theta = 0.25;
  AmgHierarchy amg(A, opts);
  std::mt19937 rng(4u);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 5; ++trial) {
    Vec r(A.rows()), s(A.rows());
    for (int i = 0; i < r.size(); ++i) {
      r[i] = dist(rng);
      s[i] = dist(rng);
    }
    double a = s.dot(amg.apply(r, 2));
    double b = r.dot(amg.apply(s, 2));
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
    CHECK(r.dot(amg.apply(r, 2)) > 0.0); // and positive definite
  }
}

TEST_CASE("galerkin coarse operators stay symmetric") {
  SpMat A = poisson_2d(32);
  AmgOptions opts;
  opts.theta = 0.25;
  AmgHierarchy amg(A, opts);
  for (int l = 0; l < amg.n_levels(); ++l) {
    CHECK(symmetry_defect(amg.level_operator(l)) < 1e-12);
    if (l > 0) CHECK(amg.level_size(l) < amg.level_size(l - 1));
  }
}

TEST_CASE("amg handles the DG velocity block") {
  Mesh mesh = generate_structured(2, 8, Box::unit(2));
  DofLayout layout = build_layout(mesh, 2);
  AssemblyConfig config = AssemblyConfig::defaults(2, 2);
  SpMat A = assemble_A(mesh, layout, config);
  AmgOptions opts; // default theta
  AmgHierarchy amg(A, opts);
  CHECK(amg.n_levels() >= 2);
  // several cycles make a useful (if not textbook-fast) preconditioner
  CHECK(contraction_factor(A, amg, 23u) < 1.0);

  // preconditioned CG converges in a bounded number of iterations
  Vec b = Vec::Ones(A.rows());
  Vec x = Vec::Zero(A.rows());
  Vec r = b, z = amg.apply(r, 4), p = z;
  double rz = r.dot(z);
  int it = 0;
  for (; it < 100; ++it) {
    Vec Ap = spmv(A, p);
    double alpha = rz / p.dot(Ap);
    x += alpha * p;
    r -= alpha * Ap;
    if (r.norm() < 1e-8 * b.norm()) break;
    z = amg.apply(r, 4);
    double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  CHECK(it < 100);
}
