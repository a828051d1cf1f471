#include "stokeshp/spaces.hpp"

#include <stdexcept>

#include "stokeshp/basis.hpp"

namespace stokeshp {

DofLayout build_layout(const Mesh& mesh, int k) {
  if (k < 1) throw std::invalid_argument("build_layout: k must be >= 1");
  DofLayout l;
  l.dim = mesh.dim;
  l.k = k;
  l.n_cells = mesh.n_cells();
  l.n_facets = mesh.n_facets();
  l.nb_u = poly_space_dim(mesh.dim, k);
  l.nb_p = poly_space_dim(mesh.dim, k - 1);
  l.nb_l = poly_space_dim(mesh.dim - 1, k);
  l.n_u = l.n_cells * mesh.dim * l.nb_u;
  l.n_p = l.n_cells * l.nb_p;
  l.n_l = l.n_facets * l.nb_l;
  return l;
}

} // namespace stokeshp
