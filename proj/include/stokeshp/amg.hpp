#pragma once

#include <memory>
#include <vector>

#include "stokeshp/sparse_linalg.hpp"
#include "stokeshp/types.hpp"

namespace stokeshp {

struct AmgOptions {
  double theta = 0.9;       // strength-of-connection threshold
  int max_levels = 25;
  int coarsest_size = 64;   // direct solve at or below this size
  int pre_sweeps = 1;       // symmetric Gauss-Seidel sweeps
  int post_sweeps = 1;
};

/// Classical (Ruge-Stueben) algebraic multigrid hierarchy for an SPD
/// matrix: first-pass C/F splitting with the absolute-value strength
/// measure, direct interpolation, Galerkin coarse operators, symmetric
/// Gauss-Seidel smoothing, and a direct solve on the coarsest level.
class AmgHierarchy {
public:
  AmgHierarchy(const SpMat& A, const AmgOptions& options);

  /// n_cycles V-cycles from a zero initial guess: a fixed symmetric
  /// positive definite linear operator approximating A^{-1} r.
  Vec apply(const Vec& r, int n_cycles) const;

  int n_levels() const { return static_cast<int>(levels_.size()); }
  int level_size(int l) const { return static_cast<int>(levels_[l].A.rows()); }
  const SpMat& level_operator(int l) const { return levels_[l].A; }
  const SpMat& interpolation(int l) const { return levels_[l].P; }

  /// C-point fraction produced by the splitting on level l (diagnostics).
  double coarse_fraction(int l) const;

private:
  struct Level {
    SpMat A;
    SpMat P;  // interpolation from level l+1 up to this level
    SpMat R;  // restriction = P^T
    int n_coarse = 0;
  };

  void cycle(int l, const Vec& r, Vec& x) const;

  AmgOptions options_;
  std::vector<Level> levels_; // levels_[l].P interpolates from level l+1 to level l
  std::unique_ptr<SpdFactorization> coarse_solver_;
};

} // namespace stokeshp
