#include "stokeshp/basis.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace stokeshp {

int poly_space_dim(int dim, int degree) {
  int n = 1;
  for (int d = 1; d <= dim; ++d) n = n * (degree + d) / d;
  return n;
}

double simplex_monomial_integral(int dim, const Eigen::VectorXi& expo) {
  // \int_T x^a y^b z^c = a! b! c! / (a+b+c+dim)!
  double lognum = 0.0;
  int total = dim;
  for (int d = 0; d < dim; ++d) {
    lognum += std::lgamma(expo[d] + 1.0);
    total += expo[d];
  }
  return std::exp(lognum - std::lgamma(total + 1.0));
}

namespace {

Eigen::MatrixXi monomial_exponents(int dim, int degree) {
  const int n = poly_space_dim(dim, degree);
  Eigen::MatrixXi expo(n, dim);
  int r = 0;
  if (dim == 1) {
    for (int a = 0; a <= degree; ++a) expo(r++, 0) = a;
  } else if (dim == 2) {
    for (int t = 0; t <= degree; ++t)
      for (int a = t; a >= 0; --a) {
        expo(r, 0) = a;
        expo(r, 1) = t - a;
        ++r;
      }
  } else {
    for (int t = 0; t <= degree; ++t)
      for (int a = t; a >= 0; --a)
        for (int b = t - a; b >= 0; --b) {
          expo(r, 0) = a;
          expo(r, 1) = b;
          expo(r, 2) = t - a - b;
          ++r;
        }
  }
  return expo;
}

Mat uniform_lattice(int dim, int degree) {
  const int n = poly_space_dim(dim, degree);
  Mat nodes(dim, n);
  if (degree == 0) {
    nodes.setConstant(1.0 / (dim + 1));
    return nodes;
  }
  int r = 0;
  if (dim == 1) {
    for (int a = 0; a <= degree; ++a) nodes(0, r++) = double(a) / degree;
  } else if (dim == 2) {
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; b <= degree - a; ++b) {
        nodes(0, r) = double(a) / degree;
        nodes(1, r) = double(b) / degree;
        ++r;
      }
  } else {
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; b <= degree - a; ++b)
        for (int c = 0; c <= degree - a - b; ++c) {
          nodes(0, r) = double(a) / degree;
          nodes(1, r) = double(b) / degree;
          nodes(2, r) = double(c) / degree;
          ++r;
        }
  }
  return nodes;
}

} // namespace

PolyBasis::PolyBasis(int dim, int degree)
    : dim_(dim), degree_(degree), n_(poly_space_dim(dim, degree)) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("PolyBasis: dim must be 1..3");
  if (degree < 0) throw std::invalid_argument("PolyBasis: negative degree");
  expo_ = monomial_exponents(dim, degree);
}

PolyBasis PolyBasis::orthonormal(int dim, int degree) {
  PolyBasis b(dim, degree);
  Mat G(b.n_, b.n_);
  for (int i = 0; i < b.n_; ++i)
    for (int j = 0; j <= i; ++j) {
      Eigen::VectorXi e = b.expo_.row(i) + b.expo_.row(j);
      G(i, j) = G(j, i) = simplex_monomial_integral(dim, e);
    }
  // G = L L^T; phi = L^{-1} m is orthonormal. The monomial Gram is badly
  // conditioned at high degree, so one factorization leaves an O(eps*cond)
  // orthonormality defect; re-orthonormalizing against the exact Gram of the
  // current coefficients (still analytic) removes it.
  b.coeff_ = Mat::Identity(b.n_, b.n_);
  for (int pass = 0; pass < 2; ++pass) {
    Mat Gc = b.coeff_ * G * b.coeff_.transpose();
    Eigen::LLT<Mat> llt(Gc);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("PolyBasis: monomial Gram not positive definite");
    Mat L = llt.matrixL();
    b.coeff_ = L.triangularView<Eigen::Lower>().solve(b.coeff_);
  }
  return b;
}

PolyBasis PolyBasis::nodal(int dim, int degree) {
  PolyBasis ortho = orthonormal(dim, degree);
  Mat nodes = uniform_lattice(dim, degree);
  Mat V = ortho.eval(nodes).transpose(); // V(i,j) = phi_j(x_i)
  PolyBasis b(dim, degree);
  // psi = V^{-T} phi gives psi_i(x_m) = delta_im
  b.coeff_ = V.transpose().partialPivLu().solve(ortho.coeff_);
  return b;
}

Mat PolyBasis::eval(const Mat& points) const {
  const int np = static_cast<int>(points.cols());
  Mat mono(n_, np);
  for (int i = 0; i < n_; ++i)
    for (int q = 0; q < np; ++q) {
      double v = 1.0;
      for (int d = 0; d < dim_; ++d) v *= std::pow(points(d, q), expo_(i, d));
      mono(i, q) = v;
    }
  return coeff_ * mono;
}

void PolyBasis::eval(const Mat& points, Mat& values, std::vector<Mat>& grads) const {
  const int np = static_cast<int>(points.cols());
  values = eval(points);
  grads.assign(dim_, Mat(n_, np));
  Mat dmono(n_, np);
  for (int d = 0; d < dim_; ++d) {
    for (int i = 0; i < n_; ++i)
      for (int q = 0; q < np; ++q) {
        int a = expo_(i, d);
        if (a == 0) {
          dmono(i, q) = 0.0;
          continue;
        }
        double v = a * std::pow(points(d, q), a - 1);
        for (int e = 0; e < dim_; ++e)
          if (e != d) v *= std::pow(points(e, q), expo_(i, e));
        dmono(i, q) = v;
      }
    grads[d] = coeff_ * dmono;
  }
}

Mat physical_to_reference(const Mesh& mesh, int c, const Mat& X) {
  Mat J = mesh.cell_jacobian(c);
  Vec v0 = mesh.cell_vertex(c, 0);
  return J.partialPivLu().solve(X.colwise() - v0);
}

Mat facet_physical_points(const Mesh& mesh, const Facet& facet, const QuadratureRule& rule) {
  const int dim = mesh.dim;
  const int nq = rule.size();
  Mat X(dim, nq);
  Vec w0 = mesh.vertices.col(facet.vertex_ids[0]);
  for (int q = 0; q < nq; ++q) {
    Vec x = w0;
    for (int s = 0; s < dim - 1; ++s)
      x += rule.points(s, q) * (mesh.vertices.col(facet.vertex_ids[s + 1]) - w0);
    X.col(q) = x;
  }
  return X;
}

void facet_trace(const PolyBasis& cell_basis, const Mesh& mesh, int c,
                 const Mat& physical_points, Mat& values, std::vector<Mat>& grads) {
  Mat ref = physical_to_reference(mesh, c, physical_points);
  std::vector<Mat> ref_grads;
  cell_basis.eval(ref, values, ref_grads);
  // physical gradient = J^{-T} reference gradient
  Mat JinvT = mesh.cell_jacobian(c).inverse().transpose();
  const int dim = mesh.dim;
  grads.assign(dim, Mat::Zero(cell_basis.n_funcs(), physical_points.cols()));
  for (int d = 0; d < dim; ++d)
    for (int e = 0; e < dim; ++e) grads[d] += JinvT(d, e) * ref_grads[e];
}

} // namespace stokeshp
