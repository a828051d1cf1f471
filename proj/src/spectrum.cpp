#include "stokeshp/spectrum.hpp"

#include <cstdlib>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "stokeshp/sparse_linalg.hpp"

namespace stokeshp {

namespace {

// Orthonormal basis of the complement of a single vector, via Householder QR.
Mat complement_basis(const Vec& v) {
  const int n = static_cast<int>(v.size());
  Eigen::HouseholderQR<Mat> qr(v);
  Mat Q = qr.householderQ();
  return Q.rightCols(n - 1);
}

Vec generalized_eigs(const Mat& S, const Mat& Mw, const Vec* nullvec) {
  Mat Sr = S, Mr = Mw;
  if (nullvec) {
    Mat Z = complement_basis(*nullvec);
    Sr = Z.transpose() * S * Z;
    Mr = Z.transpose() * Mw * Z;
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(Sr, Mr);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectrum: generalized eigensolver failed");
  return es.eigenvalues();
}

} // namespace

int dense_limit() {
  if (const char* env = std::getenv("STOKES_HP_DENSE_LIMIT")) return std::atoi(env);
  return 20000;
}

SpectrumReport compute_schur_spectrum(const Mesh& mesh, const DofLayout& layout,
                                      const AssemblyConfig& config, double omega_q,
                                      double omega_m, bool with_precond_eigs,
                                      bool with_infsup_estimates) {
  if (layout.total() > dense_limit())
    throw std::runtime_error("compute_schur_spectrum: problem exceeds the dense limit (" +
                             std::to_string(layout.total()) + " > " +
                             std::to_string(dense_limit()) + " dofs)");

  SpectrumReport rep;
  rep.h = mesh.max_h_F();
  rep.k = layout.k;
  rep.omega_q = omega_q;
  rep.omega_m = omega_m;

  SpMat A = assemble_A(mesh, layout, config);
  SpMat B = assemble_B(mesh, layout, config);
  SpMat C = assemble_C(mesh, layout, config);
  SpMat Q = assemble_mass_Q(mesh, layout, config);
  SpMat M = assemble_mass_M(mesh, layout, config);
  Vec n0 = nullspace_vector(mesh, layout);

  const int nu = layout.n_u, np = layout.n_p, nl = layout.n_l;
  const int m = np + nl;

  // Bfull = [B; C], S = Bfull A^{-1} Bfull^T formed column by column.
  Mat Bt(nu, m);
  Bt.leftCols(np) = Mat(B.transpose());
  Bt.rightCols(nl) = Mat(C.transpose());
  SpdFactorization A_fact(A);
  Mat X(nu, m);
  for (int j = 0; j < m; ++j) X.col(j) = A_fact.solve(Bt.col(j));
  Mat S = Bt.transpose() * X;
  S = 0.5 * (S + S.transpose());

  Mat Mw = Mat::Zero(m, m);
  Mw.topLeftCorner(np, np) = omega_q * Mat(Q);
  Mw.bottomRightCorner(nl, nl) = omega_m * Mat(M);

  Vec n0q = n0.tail(m);
  rep.schur_eigenvalues = generalized_eigs(S, Mw, &n0q);
  rep.s_min = rep.schur_eigenvalues.minCoeff();
  rep.s_max = rep.schur_eigenvalues.maxCoeff();

  if (with_precond_eigs) {
    Mat Afull = Mat::Zero(layout.total(), layout.total());
    Afull.topLeftCorner(nu, nu) = Mat(A);
    Afull.block(nu, 0, m, nu) = Bt.transpose();
    Afull.block(0, nu, nu, m) = Bt;
    Mat P = Mat::Zero(layout.total(), layout.total());
    P.topLeftCorner(nu, nu) = Mat(A);
    P.bottomRightCorner(m, m) = Mw;
    rep.precond_eigenvalues = generalized_eigs(Afull, P, &n0);
    rep.has_precond_eigs = true;

    double neg_min = 0, neg_max = -1e300, pos_min = 1e300, pos_max = 0;
    for (int i = 0; i < rep.precond_eigenvalues.size(); ++i) {
      double r = rep.precond_eigenvalues[i];
      if (r < 0) {
        neg_min = std::min(neg_min, r);
        neg_max = std::max(neg_max, r);
      } else {
        pos_min = std::min(pos_min, r);
        pos_max = std::max(pos_max, r);
      }
    }
    rep.neg_min = neg_min;
    rep.neg_max = neg_max;
    rep.pos_min = pos_min;
    rep.pos_max = pos_max;
  }

  if (with_infsup_estimates) {
    // beta^2 = min eig of (B G^{-1} B^T, Q); same for C against M.
    SpMat G = assemble_gram_1h(mesh, layout, config);
    SpdFactorization G_fact(G);
    Mat XB(nu, np), XC(nu, nl);
    for (int j = 0; j < np; ++j) XB.col(j) = G_fact.solve(Bt.col(j));
    for (int j = 0; j < nl; ++j) XC.col(j) = G_fact.solve(Bt.col(np + j));
    Mat SB = Bt.leftCols(np).transpose() * XB;
    Mat SC = Bt.rightCols(nl).transpose() * XC;
    Vec n0p = n0.segment(nu, np);
    Vec n0l = n0.tail(nl);
    Vec eb = generalized_eigs(0.5 * (SB + SB.transpose()), Mat(Q), &n0p);
    Vec ec = generalized_eigs(0.5 * (SC + SC.transpose()), Mat(M), nullptr);
    rep.beta_estimate = std::sqrt(std::max(0.0, eb.minCoeff()));
    rep.beta_lambda_estimate = std::sqrt(std::max(0.0, ec.minCoeff()));
  }

  return rep;
}

} // namespace stokeshp
