#pragma once

#include <vector>

#include "stokeshp/mesh.hpp"
#include "stokeshp/quadrature.hpp"
#include "stokeshp/types.hpp"

namespace stokeshp {

/// Polynomial basis of P_k on the reference simplex, stored as linear
/// combinations of monomials. Two variants:
///  - orthonormal: L2-orthonormalized against the exact monomial Gram
///    (well conditioned at high k; used for cell fields),
///  - nodal: Lagrange basis at the uniform lattice (partition of unity;
///    used for the facet multiplier).
class PolyBasis {
public:
  static PolyBasis orthonormal(int dim, int degree);
  static PolyBasis nodal(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int n_funcs() const { return n_; }

  /// values: n_funcs x n_points
  Mat eval(const Mat& points) const;
  /// values n_funcs x n_points; grads[d] holds d/dx_d, same shape
  void eval(const Mat& points, Mat& values, std::vector<Mat>& grads) const;

private:
  PolyBasis(int dim, int degree);
  int dim_, degree_, n_;
  Eigen::MatrixXi expo_; // n x dim monomial exponents
  Mat coeff_;            // n x n, phi_i = sum_j coeff_(i,j) m_j
};

/// dim P_k on a simplex of dimension d.
int poly_space_dim(int dim, int degree);

/// Exact integral of x^a (* y^b (* z^c)) over the unit simplex.
double simplex_monomial_integral(int dim, const Eigen::VectorXi& expo);

/// Reference coordinates in cell c of physical points X (dim x np).
Mat physical_to_reference(const Mesh& mesh, int c, const Mat& X);

/// Physical quadrature points on a facet: maps a reference-facet rule
/// through the facet vertices. Returns dim x nq points; physical weights are
/// rule.weights * (facet measure / reference facet measure).
Mat facet_physical_points(const Mesh& mesh, const Facet& facet, const QuadratureRule& rule);

/// Traces of a cell basis at physical facet points: values and physical
/// gradients of every basis function of `cell_basis` on cell c, evaluated by
/// pulling the points back into the cell. values: nf x nq; grads[d]: nf x nq.
void facet_trace(const PolyBasis& cell_basis, const Mesh& mesh, int c,
                 const Mat& physical_points, Mat& values, std::vector<Mat>& grads);

} // namespace stokeshp
