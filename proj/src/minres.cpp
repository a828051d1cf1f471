#include "stokeshp/minres.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace stokeshp {

std::pair<Vec, SolveReport> minres(const LinOp& op, const LinOp& precond, const Vec& b,
                                   const MinresOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = static_cast<int>(b.size());

  // Orthonormalize the deflation vectors; project them out everywhere so the
  // whole iteration lives in their complement.
  std::vector<Vec> defl;
  for (Vec d : opts.deflation_vectors) {
    for (const Vec& e : defl) d -= e.dot(d) * e;
    double nd = d.norm();
    if (nd > 0) defl.push_back(d / nd);
  }
  auto project = [&defl](Vec v) {
    for (const Vec& e : defl) v -= e.dot(v) * e;
    return v;
  };
  auto apply_op = [&](const Vec& v) { return project(op(project(v))); };
  auto apply_prec = [&](const Vec& v) { return project(precond(project(v))); };

  SolveReport report;
  Vec x = Vec::Zero(n);

  Vec v = project(b);
  Vec v_old = Vec::Zero(n);
  Vec w = Vec::Zero(n), w_old = Vec::Zero(n);
  Vec z = apply_prec(v);
  double vz = v.dot(z);
  if (vz < 0) throw std::runtime_error("minres: preconditioner is not positive definite");
  double gamma = std::sqrt(vz), gamma_old = 1.0;
  const double gamma0 = gamma;
  report.residual_history.push_back(gamma0);

  if (gamma0 == 0.0) {
    report.converged = true;
    report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {x, report};
  }

  double eta = gamma;
  double s = 0.0, s_old = 0.0, c = 1.0, c_old = 1.0;

  for (int it = 1; it <= opts.maxit; ++it) {
    z /= gamma;
    Vec Az = apply_op(z);
    double delta = z.dot(Az);
    Vec v_new = Az - (delta / gamma) * v - (gamma / gamma_old) * v_old;
    Vec z_new = apply_prec(v_new);
    double vz_new = v_new.dot(z_new);
    if (vz_new < 0) throw std::runtime_error("minres: preconditioner is not positive definite");
    double gamma_new = std::sqrt(vz_new);

    double a0 = c * delta - c_old * s * gamma;
    double a1 = std::sqrt(a0 * a0 + gamma_new * gamma_new);
    double a2 = s * delta + c_old * c * gamma;
    double a3 = s_old * gamma;
    double c_new = a0 / a1;
    double s_new = gamma_new / a1;

    Vec w_new = (z - a3 * w_old - a2 * w) / a1;
    x += (c_new * eta) * w_new;
    eta = -s_new * eta;

    v_old = v;
    v = v_new;
    z = z_new;
    w_old = w;
    w = w_new;
    gamma_old = gamma;
    gamma = gamma_new;
    c_old = c;
    c = c_new;
    s_old = s;
    s = s_new;

    report.iterations = it;
    report.residual_history.push_back(std::abs(eta));
    if (std::abs(eta) <= opts.tol * gamma0) {
      report.converged = true;
      break;
    }
    if (gamma == 0.0) { // exact solution found in the Krylov space
      report.converged = true;
      break;
    }
  }

  Vec r = project(b) - apply_op(x);
  double bn = project(b).norm();
  report.final_true_residual = bn > 0 ? r.norm() / bn : r.norm();
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {x, report};
}

} // namespace stokeshp
