#include "stokeshp/sparse_linalg.hpp"

#include <stdexcept>

#include <unsupported/Eigen/SparseExtra>

namespace stokeshp {

Vec spmv(const SpMat& A, const Vec& x) {
  if (A.cols() != x.size()) throw std::invalid_argument("spmv: dimension mismatch");
  return A * x;
}

double symmetry_defect(const SpMat& A) {
  SpMat D = SpMat(A.transpose()) - A;
  double norm = 0.0, dnorm = 0.0;
  Vec row_abs = Vec::Zero(A.rows()), drow_abs = Vec::Zero(A.rows());
  for (int i = 0; i < A.outerSize(); ++i)
    for (SpMat::InnerIterator it(A, i); it; ++it) row_abs[it.row()] += std::abs(it.value());
  for (int i = 0; i < D.outerSize(); ++i)
    for (SpMat::InnerIterator it(D, i); it; ++it) drow_abs[it.row()] += std::abs(it.value());
  norm = row_abs.maxCoeff();
  dnorm = drow_abs.maxCoeff();
  return norm > 0 ? dnorm / norm : dnorm;
}

SpdFactorization::SpdFactorization(const SpMat& A) : n_(static_cast<int>(A.rows())) {
  Eigen::SparseMatrix<double> Ac(A); // column-major copy for the solver
  llt_.compute(Ac);
  if (llt_.info() != Eigen::Success)
    throw std::runtime_error("SpdFactorization: matrix is not positive definite");
}

Vec SpdFactorization::solve(const Vec& b) const {
  if (b.size() != n_) throw std::invalid_argument("SpdFactorization::solve: dimension mismatch");
  return llt_.solve(b);
}

void sgs_sweep(const SpMat& A, const Vec& b, Vec& x) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n || b.size() != n || x.size() != n)
    throw std::invalid_argument("sgs_sweep: dimension mismatch");

  auto relax_row = [&](int i) {
    double diag = 0.0, sum = b[i];
    for (SpMat::InnerIterator it(A, i); it; ++it) {
      if (it.col() == i)
        diag = it.value();
      else
        sum -= it.value() * x[it.col()];
    }
    if (diag == 0.0) throw std::runtime_error("sgs_sweep: zero diagonal at row " + std::to_string(i));
    x[i] = sum / diag;
  };

  for (int i = 0; i < n; ++i) relax_row(i);
  for (int i = n - 1; i >= 0; --i) relax_row(i);
}

void write_matrix_market(const SpMat& A, const std::string& path) {
  Eigen::SparseMatrix<double> Ac(A);
  if (!Eigen::saveMarket(Ac, path))
    throw std::runtime_error("write_matrix_market: cannot write " + path);
}

void write_matrix_market(const Vec& v, const std::string& path) {
  if (!Eigen::saveMarketVector(v, path))
    throw std::runtime_error("write_matrix_market: cannot write " + path);
}

SpMat read_matrix_market(const std::string& path) {
  Eigen::SparseMatrix<double> Ac;
  if (!Eigen::loadMarket(Ac, path))
    throw std::runtime_error("read_matrix_market: cannot read " + path);
  return SpMat(Ac);
}

} // namespace stokeshp
