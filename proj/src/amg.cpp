#include "stokeshp/amg.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace stokeshp {

namespace {

// Strong connections of each row: |a_ij| >= theta * max_{k != i} |a_ik|.
// The absolute-value variant is used because DG blocks carry positive
// off-diagonal entries.
std::vector<std::vector<int>> strength_graph(const SpMat& A, double theta) {
  const int n = static_cast<int>(A.rows());
  std::vector<std::vector<int>> S(n);
  for (int i = 0; i < n; ++i) {
    double m = 0.0;
    for (SpMat::InnerIterator it(A, i); it; ++it)
      if (it.col() != i) m = std::max(m, std::abs(it.value()));
    if (m == 0.0) continue;
    for (SpMat::InnerIterator it(A, i); it; ++it)
      if (it.col() != i && std::abs(it.value()) >= theta * m) S[i].push_back(it.col());
  }
  return S;
}

enum class Mark : char { Unassigned, Coarse, Fine };

// Ruge-Stueben first-pass splitting with the usual greedy weight updates.
std::vector<Mark> split_cf(const std::vector<std::vector<int>>& S, int n) {
  std::vector<std::vector<int>> St(n); // transpose: who i strongly influences
  for (int i = 0; i < n; ++i)
    for (int j : S[i]) St[j].push_back(i);

  std::vector<int> lambda(n);
  for (int i = 0; i < n; ++i) lambda[i] = static_cast<int>(St[i].size());

  std::vector<Mark> mark(n, Mark::Unassigned);
  // lazy max-heap; stale entries are skipped
  std::priority_queue<std::pair<int, int>> heap;
  for (int i = 0; i < n; ++i) heap.emplace(lambda[i], i);

  int assigned = 0;
  while (assigned < n) {
    int i = -1;
    while (!heap.empty()) {
      auto [l, cand] = heap.top();
      heap.pop();
      if (mark[cand] == Mark::Unassigned && l == lambda[cand]) {
        i = cand;
        break;
      }
    }
    if (i < 0) break;

    mark[i] = Mark::Coarse;
    ++assigned;
    for (int j : St[i]) {
      if (mark[j] != Mark::Unassigned) continue;
      mark[j] = Mark::Fine;
      ++assigned;
      for (int k : S[j])
        if (mark[k] == Mark::Unassigned) {
          ++lambda[k];
          heap.emplace(lambda[k], k);
        }
    }
    for (int j : S[i])
      if (mark[j] == Mark::Unassigned) {
        --lambda[j];
        heap.emplace(lambda[j], j);
      }
  }
  for (int i = 0; i < n; ++i)
    if (mark[i] == Mark::Unassigned) mark[i] = Mark::Fine;
  return mark;
}

// Ruge-Stueben second pass: every strong F-F pair must share a strong
// C-point, otherwise one of the two is promoted; F-points with no strong
// C neighbor at all become C as well.
void split_second_pass(const SpMat& A, const std::vector<std::vector<int>>& S,
                       std::vector<Mark>& mark) {
  const int n = static_cast<int>(A.rows());
  std::vector<char> ci(n, 0);
  for (int i = 0; i < n; ++i) {
    if (mark[i] != Mark::Fine) continue;
    bool has_c = false;
    for (int j : S[i])
      if (mark[j] == Mark::Coarse) {
        has_c = true;
        ci[j] = 1;
      }
    if (!has_c) {
      mark[i] = Mark::Coarse;
      continue;
    }
    for (int j : S[i]) {
      if (mark[j] != Mark::Fine || j < i) continue;
      bool shared = false;
      for (int l : S[j])
        if (ci[l]) {
          shared = true;
          break;
        }
      if (!shared) {
        mark[j] = Mark::Coarse; // promote the neighbor, keep i fine
        ci[j] = 1;
      }
    }
    for (int j : S[i]) ci[j] = 0;
  }
}

// Classical Ruge-Stueben interpolation: strong F-neighbors are distributed
// over the shared coarse set with sign-matched scaling, weak couplings are
// lumped into the diagonal. C-points interpolate by identity.
SpMat build_interpolation(const SpMat& A, const std::vector<std::vector<int>>& S,
                          std::vector<Mark>& mark) {
  const int n = static_cast<int>(A.rows());
  split_second_pass(A, S, mark);

  std::vector<int> coarse_id(n, -1);
  int nc = 0;
  for (int i = 0; i < n; ++i)
    if (mark[i] == Mark::Coarse) coarse_id[i] = nc++;

  std::vector<char> strong(n, 0), in_ci(n, 0);
  std::vector<double> w(n, 0.0);
  std::vector<Triplet> trips;
  for (int i = 0; i < n; ++i) {
    if (mark[i] == Mark::Coarse) {
      trips.emplace_back(i, coarse_id[i], 1.0);
      continue;
    }
    std::vector<int> Ci;
    for (int j : S[i]) {
      strong[j] = 1;
      if (mark[j] == Mark::Coarse) {
        in_ci[j] = 1;
        Ci.push_back(j);
      }
    }

    double diag = 0.0;
    for (SpMat::InnerIterator it(A, i); it; ++it) {
      int j = static_cast<int>(it.col());
      double a = it.value();
      if (j == i) {
        diag += a;
      } else if (in_ci[j]) {
        w[j] += a;
      } else if (strong[j] && mark[j] == Mark::Fine) {
        // distribute a_ij over C_i through row j, matching coupling signs
        double den_neg = 0.0, den_pos = 0.0;
        for (SpMat::InnerIterator jt(A, j); jt; ++jt)
          if (in_ci[jt.col()]) (jt.value() < 0 ? den_neg : den_pos) += jt.value();
        if (den_neg == 0.0 && den_pos == 0.0) {
          diag += a; // nothing shared: lump
          continue;
        }
        for (SpMat::InnerIterator jt(A, j); jt; ++jt) {
          int l = static_cast<int>(jt.col());
          if (!in_ci[l]) continue;
          double den = jt.value() < 0 ? den_neg : den_pos;
          if (den != 0.0) w[l] += a * jt.value() / den;
        }
      } else {
        diag += a; // weak coupling
      }
    }

    for (int j : Ci)
      if (w[j] != 0.0 && diag != 0.0) trips.emplace_back(i, coarse_id[j], -w[j] / diag);
    for (int j : S[i]) {
      strong[j] = 0;
      in_ci[j] = 0;
    }
    for (int j : Ci) w[j] = 0.0;
  }

  SpMat P(n, nc);
  P.setFromTriplets(trips.begin(), trips.end());
  P.makeCompressed();
  return P;
}

} // namespace

AmgHierarchy::AmgHierarchy(const SpMat& A, const AmgOptions& options) : options_(options) {
  if (A.rows() != A.cols()) throw std::invalid_argument("AmgHierarchy: matrix must be square");
  if (symmetry_defect(A) > 1e-10)
    throw std::invalid_argument("AmgHierarchy: matrix must be symmetric");

  levels_.push_back({A, {}, {}, 0});
  while (static_cast<int>(levels_.size()) < options.max_levels) {
    Level& lvl = levels_.back();
    const int n = static_cast<int>(lvl.A.rows());
    if (n <= options.coarsest_size) break;

    auto S = strength_graph(lvl.A, options.theta);
    auto mark = split_cf(S, n);
    SpMat P = build_interpolation(lvl.A, S, mark);
    const int nc = static_cast<int>(P.cols());
    if (nc == 0 || nc >= static_cast<int>(0.9 * n)) break; // coarsening stagnated

    lvl.P = P;
    lvl.R = SpMat(P.transpose());
    lvl.n_coarse = nc;
    SpMat Ac = lvl.R * lvl.A * lvl.P; // Galerkin
    Ac.makeCompressed();
    levels_.push_back({Ac, {}, {}, 0});
  }
  coarse_solver_ = std::make_unique<SpdFactorization>(levels_.back().A);
}

double AmgHierarchy::coarse_fraction(int l) const {
  return double(levels_[l].n_coarse) / double(levels_[l].A.rows());
}

void AmgHierarchy::cycle(int l, const Vec& r, Vec& x) const {
  const Level& lvl = levels_[l];
  if (l == static_cast<int>(levels_.size()) - 1) {
    x = coarse_solver_->solve(r);
    return;
  }
  for (int s = 0; s < options_.pre_sweeps; ++s) sgs_sweep(lvl.A, r, x);
  Vec rc = lvl.R * (r - lvl.A * x);
  Vec xc = Vec::Zero(rc.size());
  cycle(l + 1, rc, xc);
  x += lvl.P * xc;
  for (int s = 0; s < options_.post_sweeps; ++s) sgs_sweep(lvl.A, r, x);
}

Vec AmgHierarchy::apply(const Vec& r, int n_cycles) const {
  Vec x = Vec::Zero(r.size());
  for (int c = 0; c < n_cycles; ++c) {
    if (c == 0) {
      cycle(0, r, x);
    } else {
      Vec correction = Vec::Zero(r.size());
      Vec resid = r - levels_[0].A * x;
      cycle(0, resid, correction);
      x += correction;
    }
  }
  return x;
}

} // namespace stokeshp
