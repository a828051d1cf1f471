#include "stokeshp/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace stokeshp {

namespace {

// Golub-Welsch for the Jacobi weight (1-x)^alpha (1+x)^beta on [-1,1].
void gauss_jacobi_ab(int n, double alpha, double beta, Vec& points, Vec& weights) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be >= 1");
  Mat J = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double s = 2.0 * k + alpha + beta;
    J(k, k) = (k == 0 && s == 0.0) ? (beta - alpha) / (alpha + beta + 2.0)
                                   : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k >= 1) {
      double num = 4.0 * k * (k + alpha) * (k + beta) * (k + alpha + beta);
      double den = s * s * (s + 1.0) * (s - 1.0);
      double e = std::sqrt(num / den);
      J(k, k - 1) = J(k - 1, k) = e;
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(J);
  points = es.eigenvalues();
  double mu0 = std::pow(2.0, alpha + beta + 1.0) * std::tgamma(alpha + 1.0) *
               std::tgamma(beta + 1.0) / std::tgamma(alpha + beta + 2.0);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double v0 = es.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
}

} // namespace

void gauss_legendre(int n, Vec& points, Vec& weights) {
  gauss_jacobi_ab(n, 0.0, 0.0, points, weights);
}

void gauss_jacobi(int n, double alpha, Vec& points, Vec& weights) {
  gauss_jacobi_ab(n, alpha, 0.0, points, weights);
}

QuadratureRule quadrature(int dim, int exactness_degree) {
  if (exactness_degree < 0) throw std::invalid_argument("quadrature: negative degree");
  constexpr int kMaxDegree = 40;
  if (exactness_degree > kMaxDegree)
    throw std::invalid_argument("quadrature: exactness degree too large");

  const int n = exactness_degree / 2 + 1; // 2n-1 >= degree
  QuadratureRule rule;
  rule.dim = dim;
  rule.exactness = exactness_degree;

  Vec xa, wa, xb, wb, xc, wc;
  gauss_legendre(n, xa, wa);

  if (dim == 1) {
    rule.points.resize(1, n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      rule.points(0, i) = 0.5 * (1.0 + xa[i]);
      rule.weights[i] = 0.5 * wa[i];
    }
  } else if (dim == 2) {
    // Duffy: x = (1+a)(1-b)/4, y = (1+b)/2; the Jacobi weight (1-b) absorbs
    // the collapsed-coordinate Jacobian.
    gauss_jacobi(n, 1.0, xb, wb);
    rule.points.resize(2, n * n);
    rule.weights.resize(n * n);
    int q = 0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i, ++q) {
        rule.points(0, q) = 0.25 * (1.0 + xa[i]) * (1.0 - xb[j]);
        rule.points(1, q) = 0.5 * (1.0 + xb[j]);
        rule.weights[q] = wa[i] * wb[j] / 8.0;
      }
  } else if (dim == 3) {
    gauss_jacobi(n, 1.0, xb, wb);
    gauss_jacobi(n, 2.0, xc, wc);
    rule.points.resize(3, n * n * n);
    rule.weights.resize(n * n * n);
    int q = 0;
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i, ++q) {
          rule.points(0, q) = 0.125 * (1.0 + xa[i]) * (1.0 - xb[j]) * (1.0 - xc[k]);
          rule.points(1, q) = 0.25 * (1.0 + xb[j]) * (1.0 - xc[k]);
          rule.points(2, q) = 0.5 * (1.0 + xc[k]);
          rule.weights[q] = wa[i] * wb[j] * wc[k] / 64.0;
        }
  } else {
    throw std::invalid_argument("quadrature: dim must be 1, 2 or 3");
  }
  return rule;
}

} // namespace stokeshp
