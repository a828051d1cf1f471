#pragma once

#include <array>
#include <string>
#include <vector>

#include "stokeshp/types.hpp"

namespace stokeshp {

/// A (dim-1)-dimensional face of the triangulation. Interior facets are
/// shared by exactly two cells (plus/minus, plus having the lower cell id);
/// boundary facets have minus_cell == -1. The stored normal points out of
/// the plus cell.
struct Facet {
  std::array<int, 3> vertex_ids{-1, -1, -1}; // dim entries used
  int plus_cell = -1;
  int minus_cell = -1;
  int local_index_plus = -1;  // which face of plus_cell (face i is opposite vertex i)
  int local_index_minus = -1;
  Eigen::Vector3d normal = Eigen::Vector3d::Zero(); // unit, z = 0 in 2d
  double measure = 0.0; // length (2d) or area (3d)
  double h_F = 0.0;     // measure in 2d, sqrt(area) in 3d

  bool is_boundary() const { return minus_cell < 0; }
};

/// Conforming simplicial mesh (triangles in 2d, tetrahedra in 3d) with
/// full facet connectivity. Immutable after construction.
class Mesh {
public:
  int dim = 0;
  Mat vertices;              // dim x n_vertices
  Eigen::MatrixXi cells;     // (dim+1) x n_cells, positively oriented
  std::vector<Facet> facets;
  std::vector<int> boundary_facet_ids;

  int n_vertices() const { return static_cast<int>(vertices.cols()); }
  int n_cells() const { return static_cast<int>(cells.cols()); }
  int n_facets() const { return static_cast<int>(facets.size()); }

  Eigen::VectorXd cell_vertex(int c, int lv) const { return vertices.col(cells(lv, c)); }

  double cell_volume(int c) const { return volumes_[c]; }
  Eigen::VectorXd cell_centroid(int c) const { return centroids_.col(c); }
  double total_volume() const { return volumes_.sum(); }
  double max_h_F() const;

  /// Affine map K_ref -> K: x = v0 + J xi. Returns J (dim x dim).
  Mat cell_jacobian(int c) const;

  /// Vertex ids of local face `lf` of cell `c` (the face opposite vertex lf).
  std::array<int, 3> cell_face_vertices(int c, int lf) const;

  /// Computes volumes, centroids, facet connectivity and geometry.
  /// Fixes cell orientation in place. Throws on non-conforming input.
  void finalize();

private:
  Vec volumes_;
  Mat centroids_;
};

struct Box {
  Vec lo, hi;
  static Box unit(int dim);
};

/// Structured simplicial mesh on a box: each of the N^dim grid cells is
/// split into 2 triangles (2d) or 6 Kuhn tetrahedra (3d), so refinements nest.
Mesh generate_structured(int dim, int N, const Box& box);

/// Lightweight deterministic interior-vertex jitter, used to generate
/// "unstructured" test meshes. amount is relative to the local grid spacing.
Mesh jitter_interior(const Mesh& mesh, double amount, unsigned seed);

} // namespace stokeshp
