#include "stokeshp/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "stokeshp/gmsh.hpp"

namespace stokeshp {

namespace {

using nlohmann::json;

Mesh make_mesh(const ExperimentSpec& spec, int N, const ManufacturedSolution& ms) {
  if (!spec.mesh_path.empty()) return read_gmsh(spec.mesh_path);
  return generate_structured(spec.dim, N, ms.domain);
}

ManufacturedSolution make_ms(const ExperimentSpec& spec) {
  return spec.ms_name.empty() ? default_manufactured(spec.dim)
                              : manufactured_by_name(spec.ms_name);
}

std::string precond_name(const PrecondConfig& c) {
  return c.variant == PrecondVariant::BlockDiag ? "diag" : "sgs";
}

std::string inner_name(const PrecondConfig& c) {
  return (c.inner_A == InnerA::Exact && c.inner_mass == InnerMass::Exact) ? "exact" : "approx";
}

json run_to_json(const RunResult& r, const ExperimentSpec& spec) {
  json j;
  j["config"] = {{"study", spec.study},
                 {"dim", r.dim},
                 {"k", r.k},
                 {"N", r.N},
                 {"mesh", spec.mesh_path},
                 {"manufactured", spec.ms_name},
                 {"tol", spec.tol},
                 {"eta", spec.eta},
                 {"precond", r.precond_name},
                 {"inner", r.inner_name},
                 {"omega_q", r.omega_q},
                 {"omega_m", r.omega_m},
                 {"amg_theta", spec.precond.amg.theta},
                 {"amg_cycles", spec.precond.amg_cycles},
                 {"sgs_sweeps", spec.precond.sgs_sweeps}};
  j["dofs"] = {{"n_u", r.n_u}, {"n_p", r.n_p}, {"n_l", r.n_l}, {"total", r.n_u + r.n_p + r.n_l}};
  j["iterations"] = r.report.iterations;
  j["converged"] = r.report.converged;
  j["final_true_residual"] = r.report.final_true_residual;
  j["residual_history"] = r.report.residual_history;
  j["wall_time_s"] = r.report.wall_time_s;
  j["diagnostics"] = {{"divergence_max", r.report.divergence_max},
                      {"normal_jump_max", r.report.normal_jump_max},
                      {"u_max", r.report.u_max},
                      {"u_l2_error", r.report.u_l2_error},
                      {"p_l2_error", r.report.p_l2_error}};
  return j;
}

void write_json(const json& j, const std::string& dir, const std::string& name) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name);
  if (!out) throw std::runtime_error("cannot write " + dir + "/" + name);
  out << j.dump(2) << "\n";
}

void append_csv(const std::string& dir, const std::string& name, const std::string& header,
                const std::string& row) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  bool fresh = !std::filesystem::exists(path);
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write " + path);
  if (fresh) out << header << "\n";
  out << row << "\n";
}

std::string csv_row(const RunResult& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,%d,%s,%s,%.17g,%.17g,%d,%d,%.3e,%.3e,%.3e,%.3e",
                r.k, r.N, r.n_u, r.n_p, r.n_l, r.precond_name.c_str(), r.inner_name.c_str(),
                r.omega_q, r.omega_m, r.report.iterations, r.report.converged ? 1 : 0,
                r.report.u_l2_error, r.report.p_l2_error, r.report.divergence_max,
                r.report.normal_jump_max);
  return buf;
}

constexpr const char* kCsvHeader =
    "k,N,n_u,n_p,n_l,precond,inner,omega_q,omega_m,iterations,converged,"
    "u_l2_error,p_l2_error,divergence_max,normal_jump_max";

void dump_matrices(const BlockSystem& sys, const std::string& dir) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  write_matrix_market(sys.A, dir + "/A.mtx");
  write_matrix_market(sys.B, dir + "/B.mtx");
  write_matrix_market(sys.C, dir + "/C.mtx");
  write_matrix_market(sys.Q, dir + "/Q.mtx");
  write_matrix_market(sys.M, dir + "/M.mtx");
  write_matrix_market(sys.full(), dir + "/full.mtx");
  write_matrix_market(sys.rhs, dir + "/rhs.mtx");
}

} // namespace

void ExperimentSpec::validate() const {
  if (study != "solve" && study != "h_study" && study != "omega_sweep" && study != "spectrum" &&
      study != "convergence")
    throw std::invalid_argument("unknown study: " + study);
  if (dim != 2 && dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  if (k < 2 || k > 5) throw std::invalid_argument("k must be in [2,5]");
  if (!(tol > 0 && tol < 1)) throw std::invalid_argument("tol must be in (0,1)");
  if (mesh_path.empty() && N < 1) throw std::invalid_argument("N must be >= 1");
  if (precond.omega_q <= 0 || precond.omega_m <= 0)
    throw std::invalid_argument("omega weights must be positive");
}

SolvedSystem solve_system(const Mesh& mesh, int k, double eta, const PrecondConfig& precond,
                          const ManufacturedSolution& ms, double tol, int maxit) {
  SolvedSystem s;
  s.mesh = mesh;
  s.layout = build_layout(mesh, k);
  s.config = AssemblyConfig::defaults(mesh.dim, k);
  if (eta > 0) s.config.eta = eta;
  s.system = assemble_system(mesh, s.layout, s.config, ms);

  BlockPreconditioner P(s.system, precond);
  MinresOptions opts;
  opts.tol = tol;
  opts.maxit = maxit;
  opts.deflation_vectors = {s.system.nullspace};
  auto op = [&sys = s.system](const Vec& x) { return sys.apply(x); };
  auto [x, report] = minres(op, P.op(), s.system.rhs, opts);

  // Post-process: align pressure to zero mean against the mass matrix.
  const auto& l = s.layout;
  Vec p = x.segment(l.n_u, l.n_p);
  Vec one_p = s.system.nullspace.segment(l.n_u, l.n_p);
  double vol = one_p.dot(s.system.Q * one_p);
  double mean = one_p.dot(s.system.Q * p) / vol;
  x.segment(l.n_u, l.n_p) -= mean * one_p;

  Vec u = x.head(l.n_u);
  report.divergence_max = check_divergence(mesh, l, s.config, u);
  report.normal_jump_max = check_normal_jumps(mesh, l, s.config, u);
  FieldErrors err = compute_errors(mesh, l, s.config, x, ms);
  report.u_l2_error = err.u_l2;
  report.p_l2_error = err.p_l2;
  report.u_max = err.u_max;

  s.solution = x;
  s.report = report;
  return s;
}

RunResult run_solve(const ExperimentSpec& spec) {
  spec.validate();
  ManufacturedSolution ms = make_ms(spec);
  Mesh mesh = make_mesh(spec, spec.N, ms);
  SolvedSystem s =
      solve_system(mesh, spec.k, spec.eta, spec.precond, ms, spec.tol, spec.maxit);
  dump_matrices(s.system, spec.dump_dir);

  RunResult r;
  r.dim = spec.dim;
  r.k = spec.k;
  r.N = spec.N;
  r.n_u = s.layout.n_u;
  r.n_p = s.layout.n_p;
  r.n_l = s.layout.n_l;
  PrecondConfig pc = spec.precond;
  pc.normalize();
  r.omega_q = pc.omega_q;
  r.omega_m = pc.omega_m;
  r.precond_name = precond_name(spec.precond);
  r.inner_name = inner_name(spec.precond);
  r.report = s.report;

  write_json(run_to_json(r, spec), spec.out_dir,
             "solve_k" + std::to_string(r.k) + "_N" + std::to_string(r.N) + ".json");
  append_csv(spec.out_dir, "results.csv", kCsvHeader, csv_row(r));
  return r;
}

HStudyResult run_h_study(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.N_list.size() < 3)
    throw std::invalid_argument("h_study requires at least 3 mesh levels");
  HStudyResult res;
  int lo = 1 << 30, hi = 0;
  for (int N : spec.N_list) {
    ExperimentSpec one = spec;
    one.study = "solve";
    one.N = N;
    one.mesh_path.clear();
    RunResult r = run_solve(one);
    if (!r.report.converged) throw std::runtime_error("h_study: solver did not converge");
    lo = std::min(lo, r.report.iterations);
    hi = std::max(hi, r.report.iterations);
    res.runs.push_back(std::move(r));
  }
  res.flatness = double(hi) / double(lo);
  if (!spec.out_dir.empty()) {
    json j;
    j["study"] = "h_study";
    j["flatness"] = res.flatness;
    for (const auto& r : res.runs) j["runs"].push_back(run_to_json(r, spec));
    write_json(j, spec.out_dir, "h_study_k" + std::to_string(spec.k) + ".json");
  }
  return res;
}

OmegaSweepResult run_omega_sweep(const ExperimentSpec& spec) {
  spec.validate();
  OmegaSweepResult res;
  res.min_iterations = 1 << 30;
  for (double ratio : spec.ratio_list) {
    if (ratio <= 0) throw std::invalid_argument("omega_sweep: ratios must be positive");
    ExperimentSpec one = spec;
    one.study = "solve";
    if (ratio >= 1) {
      one.precond.omega_q = ratio;
      one.precond.omega_m = 1.0;
    } else {
      one.precond.omega_q = 1.0;
      one.precond.omega_m = 1.0 / ratio;
    }
    RunResult r = run_solve(one);
    res.ratios.push_back(ratio);
    res.iterations.push_back(r.report.iterations);
    if (r.report.iterations < res.min_iterations) {
      res.min_iterations = r.report.iterations;
      res.argmin_ratio = ratio;
    }
  }
  if (!spec.out_dir.empty()) {
    std::string header = "ratio,iterations";
    for (size_t i = 0; i < res.ratios.size(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g,%d", res.ratios[i], res.iterations[i]);
      append_csv(spec.out_dir, "omega_sweep.csv", header, buf);
    }
    json j;
    j["study"] = "omega_sweep";
    j["ratios"] = res.ratios;
    j["iterations"] = res.iterations;
    j["argmin_ratio"] = res.argmin_ratio;
    j["min_iterations"] = res.min_iterations;
    write_json(j, spec.out_dir, "omega_sweep.json");
  }
  return res;
}

ConvergenceResult run_convergence(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.N_list.size() < 3)
    throw std::invalid_argument("convergence requires at least 3 mesh levels");
  ConvergenceResult res;
  for (int N : spec.N_list) {
    ExperimentSpec one = spec;
    one.study = "solve";
    one.N = N;
    one.mesh_path.clear();
    res.runs.push_back(run_solve(one));
  }
  for (size_t i = 0; i + 1 < res.runs.size(); ++i) {
    double hr = double(res.runs[i + 1].N) / double(res.runs[i].N);
    double denom = std::log(hr);
    res.u_orders.push_back(
        std::log(res.runs[i].report.u_l2_error / res.runs[i + 1].report.u_l2_error) / denom);
    res.p_orders.push_back(
        std::log(res.runs[i].report.p_l2_error / res.runs[i + 1].report.p_l2_error) / denom);
  }
  if (!spec.out_dir.empty()) {
    json j;
    j["study"] = "convergence";
    j["u_orders"] = res.u_orders;
    j["p_orders"] = res.p_orders;
    for (const auto& r : res.runs) j["runs"].push_back(run_to_json(r, spec));
    write_json(j, spec.out_dir, "convergence_k" + std::to_string(spec.k) + ".json");
  }
  return res;
}

SpectrumReport run_spectrum(const ExperimentSpec& spec) {
  spec.validate();
  ManufacturedSolution ms = make_ms(spec);
  Mesh mesh = make_mesh(spec, spec.N, ms);
  DofLayout layout = build_layout(mesh, spec.k);
  AssemblyConfig config = AssemblyConfig::defaults(mesh.dim, spec.k);
  if (spec.eta > 0) config.eta = spec.eta;
  PrecondConfig pc = spec.precond;
  pc.normalize();
  SpectrumReport rep =
      compute_schur_spectrum(mesh, layout, config, pc.omega_q, pc.omega_m, true, true);
  if (!spec.out_dir.empty()) {
    json j;
    j["study"] = "spectrum";
    j["h"] = rep.h;
    j["k"] = rep.k;
    j["omega_q"] = rep.omega_q;
    j["omega_m"] = rep.omega_m;
    j["schur"] = {{"s_min", rep.s_min}, {"s_max", rep.s_max}};
    j["precond_eigs"] = {{"neg_min", rep.neg_min},
                         {"neg_max", rep.neg_max},
                         {"pos_min", rep.pos_min},
                         {"pos_max", rep.pos_max}};
    j["infsup"] = {{"beta", rep.beta_estimate}, {"beta_lambda", rep.beta_lambda_estimate}};
    write_json(j, spec.out_dir, "spectrum_k" + std::to_string(spec.k) + "_N" +
                                    std::to_string(spec.N) + ".json");
  }
  return rep;
}

} // namespace stokeshp
