#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace stokeshp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Row-major CSR storage; solvers that need column-major convert on setup.
using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

} // namespace stokeshp
