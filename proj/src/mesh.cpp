#include "stokeshp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace stokeshp {

namespace {

double simplex_signed_volume(const Mat& verts, const Eigen::MatrixXi& cells, int c, int dim) {
  Mat J(dim, dim);
  for (int i = 0; i < dim; ++i)
    J.col(i) = verts.col(cells(i + 1, c)) - verts.col(cells(0, c));
  double det = J.determinant();
  double fact = (dim == 2) ? 2.0 : 6.0;
  return det / fact;
}

} // namespace

Box Box::unit(int dim) {
  Box b;
  b.lo = Vec::Zero(dim);
  b.hi = Vec::Ones(dim);
  return b;
}

Mat Mesh::cell_jacobian(int c) const {
  Mat J(dim, dim);
  for (int i = 0; i < dim; ++i)
    J.col(i) = vertices.col(cells(i + 1, c)) - vertices.col(cells(0, c));
  return J;
}

std::array<int, 3> Mesh::cell_face_vertices(int c, int lf) const {
  std::array<int, 3> f{-1, -1, -1};
  int j = 0;
  for (int i = 0; i <= dim; ++i)
    if (i != lf) f[j++] = cells(i, c);
  return f;
}

double Mesh::max_h_F() const {
  double h = 0.0;
  for (const auto& f : facets) h = std::max(h, f.h_F);
  return h;
}

void Mesh::finalize() {
  const int nc = n_cells();
  if (dim != 2 && dim != 3) throw std::invalid_argument("mesh: dim must be 2 or 3");

  // Orientation fix-up: swap last two vertices of negatively oriented cells.
  for (int c = 0; c < nc; ++c) {
    if (simplex_signed_volume(vertices, cells, c, dim) < 0)
      std::swap(cells(dim - 1, c), cells(dim, c));
    if (simplex_signed_volume(vertices, cells, c, dim) <= 0)
      throw std::runtime_error("mesh: degenerate cell " + std::to_string(c));
  }

  volumes_.resize(nc);
  centroids_.resize(dim, nc);
  for (int c = 0; c < nc; ++c) {
    volumes_[c] = simplex_signed_volume(vertices, cells, c, dim);
    Vec cen = Vec::Zero(dim);
    for (int i = 0; i <= dim; ++i) cen += vertices.col(cells(i, c));
    centroids_.col(c) = cen / (dim + 1);
  }

  // Facet connectivity: key each (dim-1)-subsimplex by its sorted vertex ids.
  facets.clear();
  boundary_facet_ids.clear();
  std::map<std::array<int, 3>, int> lookup;
  for (int c = 0; c < nc; ++c) {
    for (int lf = 0; lf <= dim; ++lf) {
      auto fv = cell_face_vertices(c, lf);
      auto key = fv;
      std::sort(key.begin(), key.begin() + dim);
      auto it = lookup.find(key);
      if (it == lookup.end()) {
        Facet f;
        f.vertex_ids = fv;
        f.plus_cell = c;
        f.local_index_plus = lf;
        lookup.emplace(key, static_cast<int>(facets.size()));
        facets.push_back(f);
      } else {
        Facet& f = facets[it->second];
        if (f.minus_cell >= 0)
          throw std::runtime_error("mesh: facet shared by more than two cells");
        f.minus_cell = c;
        f.local_index_minus = lf;
        // plus side is the lower cell id; cells are visited in order, so
        // plus_cell < minus_cell already holds.
      }
    }
  }

  // Facet geometry: measure, h_F, normal outward from the plus cell.
  for (auto& f : facets) {
    Eigen::Vector3d n = Eigen::Vector3d::Zero();
    if (dim == 2) {
      Vec a = vertices.col(f.vertex_ids[0]);
      Vec b = vertices.col(f.vertex_ids[1]);
      Vec t = b - a;
      f.measure = t.norm();
      f.h_F = f.measure;
      n[0] = t[1];
      n[1] = -t[0];
    } else {
      Vec a = vertices.col(f.vertex_ids[0]);
      Vec b = vertices.col(f.vertex_ids[1]);
      Vec c3 = vertices.col(f.vertex_ids[2]);
      Eigen::Vector3d e1 = Eigen::Vector3d::Zero(), e2 = Eigen::Vector3d::Zero();
      e1.head(3) = b - a;
      e2.head(3) = c3 - a;
      Eigen::Vector3d cr = e1.cross(e2);
      f.measure = 0.5 * cr.norm();
      f.h_F = std::sqrt(f.measure);
      n = cr;
    }
    if (f.measure <= 0 || f.h_F <= 0)
      throw std::runtime_error("mesh: degenerate facet");
    n.normalize();
    // Orient out of the plus cell.
    Eigen::Vector3d fc = Eigen::Vector3d::Zero();
    for (int i = 0; i < dim; ++i) fc.head(dim) += vertices.col(f.vertex_ids[i]);
    fc /= dim;
    Eigen::Vector3d pc = Eigen::Vector3d::Zero();
    pc.head(dim) = centroids_.col(f.plus_cell);
    if (n.dot(fc - pc) < 0) n = -n;
    f.normal = n;
  }

  for (int i = 0; i < n_facets(); ++i)
    if (facets[i].is_boundary()) boundary_facet_ids.push_back(i);
}

Mesh generate_structured(int dim, int N, const Box& box) {
  if (N < 1) throw std::invalid_argument("generate_structured: N must be >= 1");
  if (dim != 2 && dim != 3) throw std::invalid_argument("generate_structured: dim must be 2 or 3");
  for (int d = 0; d < dim; ++d)
    if (!(box.hi[d] > box.lo[d])) throw std::invalid_argument("generate_structured: degenerate box");

  Mesh mesh;
  mesh.dim = dim;
  const int nv1 = N + 1;

  if (dim == 2) {
    mesh.vertices.resize(2, nv1 * nv1);
    auto vid = [&](int i, int j) { return i + nv1 * j; };
    for (int j = 0; j <= N; ++j)
      for (int i = 0; i <= N; ++i) {
        mesh.vertices(0, vid(i, j)) = box.lo[0] + (box.hi[0] - box.lo[0]) * i / N;
        mesh.vertices(1, vid(i, j)) = box.lo[1] + (box.hi[1] - box.lo[1]) * j / N;
      }
    mesh.cells.resize(3, 2 * N * N);
    int c = 0;
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
        mesh.cells.col(c++) = Eigen::Vector3i(v00, v10, v11);
        mesh.cells.col(c++) = Eigen::Vector3i(v00, v11, v01);
      }
  } else {
    mesh.vertices.resize(3, nv1 * nv1 * nv1);
    auto vid = [&](int i, int j, int k) { return i + nv1 * (j + nv1 * k); };
    for (int k = 0; k <= N; ++k)
      for (int j = 0; j <= N; ++j)
        for (int i = 0; i <= N; ++i) {
          int v = vid(i, j, k);
          mesh.vertices(0, v) = box.lo[0] + (box.hi[0] - box.lo[0]) * i / N;
          mesh.vertices(1, v) = box.lo[1] + (box.hi[1] - box.lo[1]) * j / N;
          mesh.vertices(2, v) = box.lo[2] + (box.hi[2] - box.lo[2]) * k / N;
        }
    mesh.cells.resize(4, 6 * N * N * N);
    // Kuhn subdivision: one tet per permutation of the axes, walking from
    // the low corner to the high corner of each grid cell.
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    int c = 0;
    for (int k = 0; k < N; ++k)
      for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i)
          for (const auto& p : perms) {
            int ijk[3] = {i, j, k};
            Eigen::Vector4i tet;
            tet[0] = vid(ijk[0], ijk[1], ijk[2]);
            for (int s = 0; s < 3; ++s) {
              ijk[p[s]] += 1;
              tet[s + 1] = vid(ijk[0], ijk[1], ijk[2]);
            }
            mesh.cells.col(c++) = tet;
          }
  }

  mesh.finalize();
  return mesh;
}

Mesh jitter_interior(const Mesh& mesh, double amount, unsigned seed) {
  Mesh out = mesh;
  const int dim = mesh.dim;
  // Vertices on any boundary facet stay put.
  std::vector<char> on_boundary(mesh.n_vertices(), 0);
  for (int fi : mesh.boundary_facet_ids)
    for (int i = 0; i < dim; ++i) on_boundary[mesh.facets[fi].vertex_ids[i]] = 1;

  double h = mesh.max_h_F();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-amount * h, amount * h);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    if (on_boundary[v]) continue;
    for (int d = 0; d < dim; ++d) out.vertices(d, v) += u(rng);
  }
  out.finalize();
  return out;
}

} // namespace stokeshp
