#pragma once

#include <memory>

#include "stokeshp/amg.hpp"
#include "stokeshp/assembly.hpp"
#include "stokeshp/minres.hpp"
#include "stokeshp/sparse_linalg.hpp"

namespace stokeshp {

enum class InnerA { Exact, Amg };
enum class InnerMass { Exact, Sgs };
enum class PrecondVariant { BlockDiag, BlockSgs };

struct PrecondConfig {
  double omega_q = 24.0;
  double omega_m = 1.0;
  PrecondVariant variant = PrecondVariant::BlockDiag;
  InnerA inner_A = InnerA::Exact;
  InnerMass inner_mass = InnerMass::Exact;
  int amg_cycles = 4;
  int sgs_sweeps = 1;
  AmgOptions amg;

  /// Scales (omega_q, omega_m) so that min(omega_q, omega_m) = 1.
  void normalize();
};

/// The block preconditioners over the three-field system:
///   block_diag: P = bdiag(A~, omega_q Q, omega_m M)
///   block_sgs:  P^s = (L + P) P^{-1} (L^T + P), L the strictly lower
///               block triangle (B and C rows).
/// apply() evaluates z = P^{-1} r (resp. (P^s)^{-1} r); the map is a fixed
/// SPD linear operator in both cases.
class BlockPreconditioner {
public:
  BlockPreconditioner(const BlockSystem& sys, const PrecondConfig& config);

  Vec apply(const Vec& r) const;
  LinOp op() const {
    return [this](const Vec& r) { return apply(r); };
  }

  const PrecondConfig& config() const { return config_; }
  const AmgHierarchy* amg() const { return amg_.get(); }

private:
  Vec solve_A(const Vec& r) const;
  Vec solve_Q(const Vec& r) const; // against omega_q Q
  Vec solve_M(const Vec& r) const; // against omega_m M

  const BlockSystem* sys_;
  PrecondConfig config_;
  SpMat Qw_, Mw_; // weighted mass matrices
  std::unique_ptr<SpdFactorization> A_fact_, Q_fact_, M_fact_;
  std::unique_ptr<AmgHierarchy> amg_;
};

} // namespace stokeshp
