#pragma once

#include <functional>
#include <vector>

#include "stokeshp/types.hpp"

namespace stokeshp {

using LinOp = std::function<Vec(const Vec&)>;

struct SolveReport {
  int iterations = 0;
  std::vector<double> residual_history; // preconditioned residual norms, length iterations+1
  bool converged = false;
  double final_true_residual = 0.0; // ||b - A x|| / ||b||
  double wall_time_s = 0.0;

  // Filled by the experiment driver when a manufactured solution is known.
  double divergence_max = 0.0;
  double normal_jump_max = 0.0;
  double u_max = 0.0;
  double u_l2_error = 0.0;
  double p_l2_error = 0.0;
};

struct MinresOptions {
  double tol = 1e-8; // on the relative preconditioned residual
  int maxit = 2000;
  std::vector<Vec> deflation_vectors; // known nullspace, kept out of the iteration
};

/// Preconditioned MINRES for a symmetric operator with an SPD preconditioner.
/// Deflation vectors are projected out of the right-hand side, of every
/// operator application, and of every preconditioner application, so the
/// returned solution is Euclidean-orthogonal to them. Throws if the
/// preconditioner produces a negative inner product (not SPD).
std::pair<Vec, SolveReport> minres(const LinOp& op, const LinOp& precond, const Vec& b,
                                   const MinresOptions& opts);

} // namespace stokeshp
