#include "stokeshp/precond.hpp"

#include <algorithm>
#include <stdexcept>

namespace stokeshp {

void PrecondConfig::normalize() {
  if (omega_q <= 0 || omega_m <= 0)
    throw std::invalid_argument("PrecondConfig: weights must be positive");
  double m = std::min(omega_q, omega_m);
  omega_q /= m;
  omega_m /= m;
}

BlockPreconditioner::BlockPreconditioner(const BlockSystem& sys, const PrecondConfig& config)
    : sys_(&sys), config_(config) {
  config_.normalize();
  Qw_ = config_.omega_q * sys.Q;
  Mw_ = config_.omega_m * sys.M;

  if (config_.inner_A == InnerA::Exact)
    A_fact_ = std::make_unique<SpdFactorization>(sys.A);
  else
    amg_ = std::make_unique<AmgHierarchy>(sys.A, config_.amg);

  if (config_.inner_mass == InnerMass::Exact) {
    Q_fact_ = std::make_unique<SpdFactorization>(Qw_);
    M_fact_ = std::make_unique<SpdFactorization>(Mw_);
  }
}

Vec BlockPreconditioner::solve_A(const Vec& r) const {
  return A_fact_ ? A_fact_->solve(r) : amg_->apply(r, config_.amg_cycles);
}

Vec BlockPreconditioner::solve_Q(const Vec& r) const {
  if (Q_fact_) return Q_fact_->solve(r);
  Vec x = Vec::Zero(r.size());
  for (int s = 0; s < config_.sgs_sweeps; ++s) sgs_sweep(Qw_, r, x);
  return x;
}

Vec BlockPreconditioner::solve_M(const Vec& r) const {
  if (M_fact_) return M_fact_->solve(r);
  Vec x = Vec::Zero(r.size());
  for (int s = 0; s < config_.sgs_sweeps; ++s) sgs_sweep(Mw_, r, x);
  return x;
}

Vec BlockPreconditioner::apply(const Vec& r) const {
  const auto& l = sys_->layout;
  Vec r_u = r.head(l.n_u), r_p = r.segment(l.n_u, l.n_p), r_l = r.tail(l.n_l);
  Vec z(l.total());

  if (config_.variant == PrecondVariant::BlockDiag) {
    z.head(l.n_u) = solve_A(r_u);
    z.segment(l.n_u, l.n_p) = solve_Q(r_p);
    z.tail(l.n_l) = solve_M(r_l);
    return z;
  }

  // (P^s)^{-1} = (L^T + P)^{-1} P (L + P)^{-1}. The middle multiply by P
  // cancels against the forward solve on the u block, so only the two
  // triangular sweeps remain.
  Vec t_u = solve_A(r_u);
  Vec t_p = solve_Q(r_p - sys_->B * t_u);
  Vec t_l = solve_M(r_l - sys_->C * t_u);
  z.head(l.n_u) = solve_A(r_u - sys_->B.transpose() * t_p - sys_->C.transpose() * t_l);
  z.segment(l.n_u, l.n_p) = t_p;
  z.tail(l.n_l) = t_l;
  return z;
}

} // namespace stokeshp
