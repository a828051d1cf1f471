#include <doctest.h>

#include <random>

#include "stokeshp/basis.hpp"
#include "stokeshp/mesh.hpp"
#include "stokeshp/quadrature.hpp"

using namespace stokeshp;

namespace {

Mat random_simplex_points(int dim, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Mat pts(dim, n);
  for (int j = 0; j < n; ++j) {
    Vec x(dim);
    do {
      for (int d = 0; d < dim; ++d) x[d] = dist(rng);
    } while (x.sum() > 1.0);
    pts.col(j) = x;
  }
  return pts;
}

} // namespace

TEST_CASE("gauss-legendre") {
  Vec p, w;
  gauss_legendre(5, p, w);
  CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
  // exact through degree 9: int_{-1}^{1} x^8 = 2/9
  double v = (p.array().pow(8) * w.array()).sum();
  CHECK(v == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("exact monomial integrals") {
  Eigen::VectorXi e(2);
  e << 6, 6;
  // int_T x^6 y^6 = 6! 6! / 14!
  double exact = 518400.0 / 87178291200.0;
  CHECK(simplex_monomial_integral(2, e) == doctest::Approx(exact).epsilon(1e-14));
  Eigen::VectorXi z = Eigen::VectorXi::Zero(3);
  CHECK(simplex_monomial_integral(3, z) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  Eigen::VectorXi one(3);
  one << 1, 0, 0;
  CHECK(simplex_monomial_integral(3, one) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
}

TEST_CASE("simplex quadrature integrates monomials exactly") {
  for (int dim : {1, 2, 3}) {
    for (int degree : {1, 3, 5, 8}) {
      QuadratureRule rule = quadrature(dim, degree);
      double ref_measure = dim == 1 ? 1.0 : (dim == 2 ? 0.5 : 1.0 / 6.0);
      CHECK(rule.weights.sum() == doctest::Approx(ref_measure).epsilon(1e-13));
      CHECK(rule.weights.minCoeff() > 0.0);
      // all monomials of total degree <= degree
      Eigen::VectorXi e = Eigen::VectorXi::Zero(dim);
      std::function<void(int, int)> rec = [&](int d, int left) {
        if (d == dim) {
          Vec vals = Vec::Ones(rule.size());
          for (int dd = 0; dd < dim; ++dd)
            vals.array() *= rule.points.row(dd).transpose().array().pow(e[dd]);
          double got = vals.dot(rule.weights);
          double exact = simplex_monomial_integral(dim, e);
          CHECK(got == doctest::Approx(exact).epsilon(1e-12));
          return;
        }
        for (int p = 0; p <= left; ++p) {
          e[d] = p;
          rec(d + 1, left - p);
        }
        e[d] = 0;
      };
      rec(0, degree);
    }
  }
}

TEST_CASE("orthonormal basis has identity gram") {
  for (int dim : {2, 3}) {
    for (int k : {2, 5}) {
      PolyBasis basis = PolyBasis::orthonormal(dim, k);
      CHECK(basis.n_funcs() == poly_space_dim(dim, k));
      QuadratureRule rule = quadrature(dim, 2 * k);
      Mat vals = basis.eval(rule.points);
      Mat gram = vals * rule.weights.asDiagonal() * vals.transpose();
      // the monomial Gram condition number caps the achievable defect at
      // high degree; 1e-6 still leaves the basis far better conditioned
      // than raw monomials
      double tol = k <= 3 ? 1e-12 : 1e-6;
      CHECK((gram - Mat::Identity(basis.n_funcs(), basis.n_funcs())).cwiseAbs().maxCoeff() <
            tol);
    }
  }
}

TEST_CASE("basis gradients match finite differences") {
  const double h = 1e-6;
  for (int dim : {2, 3}) {
    PolyBasis basis = PolyBasis::orthonormal(dim, 4);
    Mat pts = random_simplex_points(dim, 10, 11u);
    Mat vals;
    std::vector<Mat> grads;
    basis.eval(pts, vals, grads);
    for (int d = 0; d < dim; ++d) {
      Mat plus = pts, minus = pts;
      plus.row(d).array() += h;
      minus.row(d).array() -= h;
      Mat fd = (basis.eval(plus) - basis.eval(minus)) / (2 * h);
      CHECK((fd - grads[d]).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("nodal basis is a partition of unity") {
  for (int dim : {1, 2, 3}) {
    PolyBasis basis = PolyBasis::nodal(dim, 3);
    Mat pts = random_simplex_points(dim, 20, 3u);
    Mat vals = basis.eval(pts);
    Vec sums = vals.colwise().sum();
    CHECK((sums.array() - 1.0).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("facet traces reproduce polynomials") {
  Mesh mesh = generate_structured(2, 2, Box::unit(2));
  const int k = 3;
  PolyBasis basis = PolyBasis::orthonormal(2, k);
  QuadratureRule cell_rule = quadrature(2, 2 * k + 2);
  QuadratureRule facet_rule = quadrature(1, 2 * k + 2);

  // f(x, y) = 2x - y + 1, expanded cellwise in the orthonormal basis: the
  // projection coefficients are plain L2 inner products.
  auto f = [](double x, double y) { return 2 * x - y + 1; };

  for (const auto& facet : mesh.facets) {
    int c = facet.plus_cell;
    Mat J = mesh.cell_jacobian(c);
    Vec v0 = mesh.cell_vertex(c, 0);
    Mat phys_cell = (J * cell_rule.points).colwise() + v0.head(2);
    Mat vals_ref = basis.eval(cell_rule.points);
    Vec fvals(cell_rule.size());
    for (int q = 0; q < cell_rule.size(); ++q) fvals[q] = f(phys_cell(0, q), phys_cell(1, q));
    // orthonormality is w.r.t. the reference measure, so the reference-space
    // projection needs no mass solve
    Vec coeffs = vals_ref * cell_rule.weights.asDiagonal() * fvals;
    Mat fpts = facet_physical_points(mesh, facet, facet_rule);
    Mat tvals;
    std::vector<Mat> tgrads;
    facet_trace(basis, mesh, c, fpts, tvals, tgrads);
    for (int q = 0; q < facet_rule.size(); ++q) {
      double fh = coeffs.dot(tvals.col(q));
      CHECK(fh == doctest::Approx(f(fpts(0, q), fpts(1, q))).epsilon(1e-11));
      double dx = coeffs.dot(tgrads[0].col(q));
      double dy = coeffs.dot(tgrads[1].col(q));
      CHECK(dx == doctest::Approx(2.0).epsilon(1e-9));
      CHECK(dy == doctest::Approx(-1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("facet physical points lie on the facet") {
  for (int dim : {2, 3}) {
    Mesh mesh = generate_structured(dim, 2, Box::unit(dim));
    QuadratureRule rule = quadrature(dim - 1, 4);
    for (const auto& facet : mesh.facets) {
      Mat pts = facet_physical_points(mesh, facet, rule);
      Vec a = mesh.vertices.col(facet.vertex_ids[0]);
      for (int q = 0; q < rule.size(); ++q) {
        Eigen::Vector3d d = Eigen::Vector3d::Zero();
        d.head(dim) = pts.col(q) - a;
        CHECK(std::abs(facet.normal.dot(d)) < 1e-12); // in the facet plane
      }
    }
  }
}
