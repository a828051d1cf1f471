#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stokeshp/types.hpp"

namespace stokeshp {

/// y = A x. Dimension-checked; Eigen does the row dot products.
Vec spmv(const SpMat& A, const Vec& x);

/// Relative infinity-norm symmetry defect ||A - A^T|| / ||A||.
double symmetry_defect(const SpMat& A);

/// Sparse Cholesky factorization of an SPD matrix, reusable across solves.
class SpdFactorization {
public:
  explicit SpdFactorization(const SpMat& A);
  Vec solve(const Vec& b) const;
  int rows() const { return n_; }

private:
  int n_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt_;
};

/// One forward then one backward Gauss-Seidel pass on Ax = b, in place.
/// Throws on zero diagonal entries.
void sgs_sweep(const SpMat& A, const Vec& b, Vec& x);

/// Matrix-market I/O (array and coordinate formats), for cross-validation
/// with external tools.
void write_matrix_market(const SpMat& A, const std::string& path);
void write_matrix_market(const Vec& v, const std::string& path);
SpMat read_matrix_market(const std::string& path);

} // namespace stokeshp
