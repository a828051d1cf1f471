#pragma once

#include "stokeshp/basis.hpp"
#include "stokeshp/manufactured.hpp"
#include "stokeshp/mesh.hpp"
#include "stokeshp/spaces.hpp"
#include "stokeshp/types.hpp"

namespace stokeshp {

struct AssemblyConfig {
  int k = 2;
  double eta = 0.0;          // interior penalty; defaults to 4k^2 (2d), 6k^2 (3d)
  int cell_quad_degree = 0;  // defaults to 2k+2
  int facet_quad_degree = 0; // defaults to 2k+2

  static AssemblyConfig defaults(int dim, int k);
};

/// Velocity block: vector SIP-DG Laplacian with penalty eta/h_F, symmetric
/// consistency terms, and Nitsche treatment of boundary facets. SPD for the
/// default eta. n_u x n_u.
SpMat assemble_A(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config);

/// Pressure-divergence coupling, q^T B v = -sum_K int_K q div(v). n_p x n_u.
SpMat assemble_B(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config);

/// Multiplier coupling, xi^T C v = sum_F int_F [v.n] xi (single-valued v.n
/// on boundary facets). n_l x n_u.
SpMat assemble_C(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config);

/// Pressure mass matrix, q^T Q q = ||q_h||^2. n_p x n_p, block diagonal.
SpMat assemble_mass_Q(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config);

/// Weighted multiplier mass matrix, xi^T M xi = sum_F h_F ||xi||_F^2.
/// n_l x n_l, block diagonal per facet.
SpMat assemble_mass_M(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config);

/// Gram matrix of the broken H1 norm ||.||_{1,h} (cell gradients plus
/// 1/h_F-weighted facet jumps). n_u x n_u.
SpMat assemble_gram_1h(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config);

/// Right-hand side (f, 0, g) of the hybridized system; length layout.total().
Vec assemble_rhs(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config,
                 const ManufacturedSolution& ms);

/// Coefficients of the constant functions (0_u, 1_p, 1_lambda); this vector
/// spans the nullspace of the assembled block system.
Vec nullspace_vector(const Mesh& mesh, const DofLayout& layout);

double compute_norm_1h(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config,
                       const Vec& u);
double compute_norm_lambda(const Mesh& mesh, const DofLayout& layout,
                           const AssemblyConfig& config, const Vec& xi);

/// Max |div u_h| over all cell quadrature points.
double check_divergence(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config,
                        const Vec& u);
/// Max |[u_h . n]| over all interior-facet quadrature points.
double check_normal_jumps(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config,
                          const Vec& u);

/// Cellwise L2 projection onto the velocity / pressure space.
Vec project_velocity(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config,
                     const std::function<Vec(const Vec&)>& f);
Vec project_pressure(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config,
                     const std::function<double(const Vec&)>& f);

struct FieldErrors {
  double u_l2 = 0.0;
  double p_l2 = 0.0; // after mean alignment
  double u_max = 0.0; // max |u_h| at quadrature points (scale for diagnostics)
};

/// L2 errors of a solution vector x (full block layout) against ms. The
/// pressure comparison subtracts the mean of (p_h - p_exact).
FieldErrors compute_errors(const Mesh& mesh, const DofLayout& layout,
                           const AssemblyConfig& config, const Vec& x,
                           const ManufacturedSolution& ms);

/// The assembled saddle-point system of the hybridized discretization.
struct BlockSystem {
  DofLayout layout;
  SpMat A, B, C, Q, M;
  Vec rhs;
  Vec nullspace;

  /// The full operator [[A B^T C^T],[B 0 0],[C 0 0]].
  SpMat full() const;
  /// y = full() * x without materializing the full matrix.
  Vec apply(const Vec& x) const;
};

BlockSystem assemble_system(const Mesh& mesh, const DofLayout& layout,
                            const AssemblyConfig& config, const ManufacturedSolution& ms);

} // namespace stokeshp
