#pragma once

#include "stokeshp/mesh.hpp"
#include "stokeshp/types.hpp"

namespace stokeshp {

/// Degree-of-freedom layout for the three-field hybridized space:
/// vector DG velocity of order k, DG pressure of order k-1, and facet
/// multiplier of order k. Global ordering is u, then p, then lambda;
/// velocity dofs on a cell are component-major (all x-dofs, then y, ...).
struct DofLayout {
  int dim = 0;
  int k = 0;
  int n_cells = 0;
  int n_facets = 0;
  int nb_u = 0; // scalar P_k dofs per cell
  int nb_p = 0; // P_{k-1} dofs per cell
  int nb_l = 0; // P_k dofs per facet
  int n_u = 0, n_p = 0, n_l = 0;

  int u_dof(int cell, int comp, int i) const { return cell * dim * nb_u + comp * nb_u + i; }
  int p_dof(int cell, int i) const { return n_u + cell * nb_p + i; }
  int l_dof(int facet, int i) const { return n_u + n_p + facet * nb_l + i; }

  int p_offset() const { return n_u; }
  int l_offset() const { return n_u + n_p; }
  int total() const { return n_u + n_p + n_l; }
};

DofLayout build_layout(const Mesh& mesh, int k);

} // namespace stokeshp
