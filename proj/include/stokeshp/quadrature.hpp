#pragma once

#include "stokeshp/types.hpp"

namespace stokeshp {

/// Quadrature rule on the reference simplex of dimension `dim`
/// (unit interval / unit triangle / unit tetrahedron). Weights sum to the
/// reference measure (1, 1/2, 1/6).
struct QuadratureRule {
  int dim = 0;
  int exactness = 0;
  Mat points;  // dim x n
  Vec weights; // n

  int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss-Legendre rule on [-1,1], exact for degree 2n-1.
void gauss_legendre(int n, Vec& points, Vec& weights);

/// Gauss-Jacobi rule on [-1,1] with weight (1-x)^alpha, exact for degree 2n-1
/// against that weight.
void gauss_jacobi(int n, double alpha, Vec& points, Vec& weights);

/// Rule on the reference simplex exact for all polynomials of total degree
/// <= exactness_degree. Built from collapsed (Duffy) tensor products, so all
/// weights are positive. dim may be 1 (facets of triangles), 2, or 3.
QuadratureRule quadrature(int dim, int exactness_degree);

} // namespace stokeshp
