#pragma once

#include "stokeshp/assembly.hpp"
#include "stokeshp/types.hpp"

namespace stokeshp {

/// Dense spectral diagnostics validating the preconditioner theory: the
/// generalized eigenvalues of the Schur complement against the weighted mass
/// matrix, and (optionally) the eigenvalues of the block-diagonally
/// preconditioned system, both restricted to the complement of the constant
/// nullspace.
struct SpectrumReport {
  double h = 0.0;
  int k = 0;
  double omega_q = 1.0, omega_m = 1.0;

  // S q = sigma (bdiag(w_q Q, w_m M)) q on the nullspace complement
  double s_min = 0.0, s_max = 0.0;
  Vec schur_eigenvalues;

  // rho of P^{-1} A (exact inner solves); two sign-definite clusters
  bool has_precond_eigs = false;
  double neg_min = 0.0, neg_max = 0.0; // [-c1, -c2]
  double pos_min = 0.0, pos_max = 0.0; // [c3, c4]
  Vec precond_eigenvalues;

  // smallest generalized singular values of B and C against the ||.||_{1,h}
  // Gram matrix: empirical inf-sup estimates (reported, never asserted)
  double beta_estimate = 0.0;
  double beta_lambda_estimate = 0.0;
};

/// Default size cap for the dense oracle; the STOKES_HP_DENSE_LIMIT
/// environment variable overrides it.
int dense_limit();

/// Materializes S = [B;C] A^{-1} [B;C]^T via factored solves and solves the
/// generalized symmetric eigenproblems densely. Throws if layout.total()
/// exceeds the dense limit.
SpectrumReport compute_schur_spectrum(const Mesh& mesh, const DofLayout& layout,
                                      const AssemblyConfig& config, double omega_q,
                                      double omega_m, bool with_precond_eigs = true,
                                      bool with_infsup_estimates = false);

} // namespace stokeshp
