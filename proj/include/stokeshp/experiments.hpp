#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stokeshp/assembly.hpp"
#include "stokeshp/minres.hpp"
#include "stokeshp/precond.hpp"
#include "stokeshp/spectrum.hpp"

namespace stokeshp {

struct ExperimentSpec {
  std::string study = "solve"; // solve | h_study | omega_sweep | spectrum | convergence
  int dim = 2;
  int k = 2;
  int N = 16;                 // structured mesh resolution
  std::string mesh_path;      // Gmsh mesh instead of --structured
  std::vector<int> N_list;    // h_study / convergence levels
  std::vector<double> ratio_list; // omega sweep ratios
  double tol = 1e-8;
  int maxit = 2000;
  double eta = 0.0;           // 0: default 4k^2 / 6k^2
  PrecondConfig precond;
  std::string ms_name;        // empty: default for the dimension
  std::string out_dir;        // JSON/CSV output directory (empty: no files)
  std::string dump_dir;       // matrix-market dumps (empty: none)

  void validate() const; // throws std::invalid_argument
};

struct RunResult {
  int dim = 0, k = 0, N = 0;
  int n_u = 0, n_p = 0, n_l = 0;
  double omega_q = 0.0, omega_m = 0.0;
  std::string precond_name; // diag | sgs
  std::string inner_name;   // exact | approx
  SolveReport report;
};

/// Assemble, solve, verify diagnostics, compute errors. Writes a JSON report
/// and appends a CSV row when spec.out_dir is set.
RunResult run_solve(const ExperimentSpec& spec);

/// MINRES iteration counts across mesh levels; the flatness statistic is the
/// max/min iteration ratio.
struct HStudyResult {
  std::vector<RunResult> runs;
  double flatness = 0.0;
};
HStudyResult run_h_study(const ExperimentSpec& spec);

/// Iterations as a function of omega_q/omega_m. Ratios below 1 are read as
/// omega_q = 1, omega_m = 1/ratio.
struct OmegaSweepResult {
  std::vector<double> ratios;
  std::vector<int> iterations;
  double argmin_ratio = 0.0;
  int min_iterations = 0;
};
OmegaSweepResult run_omega_sweep(const ExperimentSpec& spec);

/// Discretization errors and observed orders under uniform refinement.
struct ConvergenceResult {
  std::vector<RunResult> runs;
  std::vector<double> u_orders; // log2(err(N)/err(2N))
  std::vector<double> p_orders;
};
ConvergenceResult run_convergence(const ExperimentSpec& spec);

SpectrumReport run_spectrum(const ExperimentSpec& spec);

/// Full single-system pipeline shared by the studies and the tests.
struct SolvedSystem {
  Mesh mesh;
  DofLayout layout;
  AssemblyConfig config;
  BlockSystem system;
  Vec solution;
  SolveReport report;
};
SolvedSystem solve_system(const Mesh& mesh, int k, double eta, const PrecondConfig& precond,
                          const ManufacturedSolution& ms, double tol, int maxit);

} // namespace stokeshp
