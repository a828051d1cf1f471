#include "stokeshp/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace stokeshp {

namespace {

struct CellGeometry {
  Mat J, JinvT;
  double detJ;
  explicit CellGeometry(const Mesh& mesh, int c) {
    J = mesh.cell_jacobian(c);
    detJ = J.determinant();
    JinvT = J.inverse().transpose();
  }
};

void physical_gradients(const CellGeometry& geo, const std::vector<Mat>& ref_grads,
                        std::vector<Mat>& grads) {
  const int dim = static_cast<int>(ref_grads.size());
  grads.assign(dim, Mat::Zero(ref_grads[0].rows(), ref_grads[0].cols()));
  for (int d = 0; d < dim; ++d)
    for (int e = 0; e < dim; ++e) grads[d] += geo.JinvT(d, e) * ref_grads[e];
}

double facet_ref_measure(int dim) { return dim == 2 ? 1.0 : 0.5; }

struct FacetSide {
  int cell;
  double sign;     // +1 on the plus side, -1 on the minus side
  double avg;      // averaging coefficient: 1/2 interior, 1 boundary
  Mat values;      // nb x nq
  std::vector<Mat> grads; // physical, per direction
};

// Traces of the cell basis on both sides of a facet, at shared physical
// quadrature points. Returns the physical points and weights as well.
std::vector<FacetSide> facet_sides(const Mesh& mesh, const Facet& facet,
                                   const PolyBasis& basis, const QuadratureRule& rule,
                                   Mat& X, Vec& weights) {
  X = facet_physical_points(mesh, facet, rule);
  weights = rule.weights * (facet.measure / facet_ref_measure(mesh.dim));
  std::vector<FacetSide> sides;
  const bool boundary = facet.is_boundary();
  sides.push_back({facet.plus_cell, 1.0, boundary ? 1.0 : 0.5, {}, {}});
  if (!boundary) sides.push_back({facet.minus_cell, -1.0, 0.5, {}, {}});
  for (auto& s : sides) facet_trace(basis, mesh, s.cell, X, s.values, s.grads);
  return sides;
}

SpMat from_triplets(int rows, int cols, std::vector<Triplet>& trips) {
  SpMat m(rows, cols);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

// The velocity uses the nodal Lagrange cell basis: its near-kernel under the
// SIP-DG operator is then the all-ones vector, which classical AMG's
// constant-preserving interpolation can capture. The pressure keeps the
// orthonormal basis (only ever touched through exact mass solves).
PolyBasis velocity_basis(int dim, int k) { return PolyBasis::nodal(dim, k); }

// Coefficients of the constant function 1 in a basis, with respect to the
// reference-simplex L2 inner product.
Vec constant_coefficients(const PolyBasis& basis) {
  QuadratureRule rule = quadrature(basis.dim(), 2 * basis.degree() + 2);
  Mat vals = basis.eval(rule.points);
  Mat mass = vals * rule.weights.asDiagonal() * vals.transpose();
  Vec b = vals * rule.weights;
  return mass.llt().solve(b);
}

} // namespace

AssemblyConfig AssemblyConfig::defaults(int dim, int k) {
  AssemblyConfig c;
  c.k = k;
  c.eta = (dim == 2 ? 4.0 : 6.0) * k * k;
  c.cell_quad_degree = 2 * k + 2;
  c.facet_quad_degree = 2 * k + 2;
  return c;
}

SpMat assemble_A(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config) {
  const int dim = mesh.dim;
  const int k = layout.k;
  const int nb = layout.nb_u;
  PolyBasis basis = velocity_basis(dim, k);
  QuadratureRule cell_rule = quadrature(dim, config.cell_quad_degree);
  QuadratureRule facet_rule = quadrature(dim - 1, config.facet_quad_degree);

  Mat ref_vals;
  std::vector<Mat> ref_grads;
  basis.eval(cell_rule.points, ref_vals, ref_grads);

  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(mesh.n_cells()) * dim * nb * nb * 4);

  // Volume term: grad(u) : grad(v), identical per component.
  for (int c = 0; c < mesh.n_cells(); ++c) {
    CellGeometry geo(mesh, c);
    std::vector<Mat> grads;
    physical_gradients(geo, ref_grads, grads);
    Mat Ke = Mat::Zero(nb, nb);
    for (int d = 0; d < dim; ++d)
      Ke += grads[d] * (cell_rule.weights * geo.detJ).asDiagonal() * grads[d].transpose();
    for (int comp = 0; comp < dim; ++comp)
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
          trips.emplace_back(layout.u_dof(c, comp, i), layout.u_dof(c, comp, j), Ke(i, j));
  }

  // Facet terms: penalty and the two symmetric consistency terms. All three
  // act componentwise with the scalar traces.
  for (const auto& facet : mesh.facets) {
    Mat X;
    Vec w;
    auto sides = facet_sides(mesh, facet, basis, facet_rule, X, w);
    Vec n = facet.normal.head(dim);
    const double pen = config.eta / facet.h_F;

    for (const auto& s : sides) {
      // normal derivative of each basis function on side s
      Mat dn_s = Mat::Zero(nb, X.cols());
      for (int d = 0; d < dim; ++d) dn_s += n[d] * s.grads[d];
      for (const auto& t : sides) {
        Mat dn_t = Mat::Zero(nb, X.cols());
        for (int d = 0; d < dim; ++d) dn_t += n[d] * t.grads[d];

        // rows: test functions from side s; cols: trial from side t
        Mat block = pen * s.sign * t.sign * (s.values * w.asDiagonal() * t.values.transpose());
        block -= t.sign * s.avg * (dn_s * w.asDiagonal() * t.values.transpose());
        block -= s.sign * t.avg * (s.values * w.asDiagonal() * dn_t.transpose());

        for (int comp = 0; comp < dim; ++comp)
          for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j)
              trips.emplace_back(layout.u_dof(s.cell, comp, i), layout.u_dof(t.cell, comp, j),
                                 block(i, j));
      }
    }
  }

  return from_triplets(layout.n_u, layout.n_u, trips);
}

SpMat assemble_B(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config) {
  const int dim = mesh.dim;
  PolyBasis ubasis = velocity_basis(dim, layout.k);
  PolyBasis pbasis = PolyBasis::orthonormal(dim, layout.k - 1);
  QuadratureRule rule = quadrature(dim, config.cell_quad_degree);

  Mat uvals, pvals;
  std::vector<Mat> ugrads_ref;
  ubasis.eval(rule.points, uvals, ugrads_ref);
  pvals = pbasis.eval(rule.points);

  std::vector<Triplet> trips;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    CellGeometry geo(mesh, c);
    std::vector<Mat> ugrads;
    physical_gradients(geo, ugrads_ref, ugrads);
    for (int comp = 0; comp < dim; ++comp) {
      Mat block = -(pvals * (rule.weights * geo.detJ).asDiagonal() * ugrads[comp].transpose());
      for (int i = 0; i < layout.nb_p; ++i)
        for (int j = 0; j < layout.nb_u; ++j)
          trips.emplace_back(c * layout.nb_p + i, layout.u_dof(c, comp, j), block(i, j));
    }
  }
  return from_triplets(layout.n_p, layout.n_u, trips);
}

SpMat assemble_C(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config) {
  const int dim = mesh.dim;
  PolyBasis ubasis = velocity_basis(dim, layout.k);
  PolyBasis lbasis = PolyBasis::nodal(dim - 1, layout.k);
  QuadratureRule rule = quadrature(dim - 1, config.facet_quad_degree);
  Mat lvals = lbasis.eval(rule.points); // nb_l x nq, on the reference facet

  std::vector<Triplet> trips;
  for (int fi = 0; fi < mesh.n_facets(); ++fi) {
    const Facet& facet = mesh.facets[fi];
    Mat X;
    Vec w;
    auto sides = facet_sides(mesh, facet, ubasis, rule, X, w);
    Vec n = facet.normal.head(dim);
    for (const auto& s : sides) {
      for (int comp = 0; comp < dim; ++comp) {
        Mat block = s.sign * n[comp] * (lvals * w.asDiagonal() * s.values.transpose());
        for (int i = 0; i < layout.nb_l; ++i)
          for (int j = 0; j < layout.nb_u; ++j)
            trips.emplace_back(fi * layout.nb_l + i, layout.u_dof(s.cell, comp, j), block(i, j));
      }
    }
  }
  return from_triplets(layout.n_l, layout.n_u, trips);
}

SpMat assemble_mass_Q(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config) {
  PolyBasis pbasis = PolyBasis::orthonormal(mesh.dim, layout.k - 1);
  QuadratureRule rule = quadrature(mesh.dim, config.cell_quad_degree);
  Mat pvals = pbasis.eval(rule.points);
  Mat ref_mass = pvals * rule.weights.asDiagonal() * pvals.transpose();

  std::vector<Triplet> trips;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    double detJ = CellGeometry(mesh, c).detJ;
    for (int i = 0; i < layout.nb_p; ++i)
      for (int j = 0; j < layout.nb_p; ++j)
        trips.emplace_back(c * layout.nb_p + i, c * layout.nb_p + j, detJ * ref_mass(i, j));
  }
  return from_triplets(layout.n_p, layout.n_p, trips);
}

SpMat assemble_mass_M(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config) {
  PolyBasis lbasis = PolyBasis::nodal(mesh.dim - 1, layout.k);
  QuadratureRule rule = quadrature(mesh.dim - 1, config.facet_quad_degree);
  Mat lvals = lbasis.eval(rule.points);
  Mat ref_mass = lvals * rule.weights.asDiagonal() * lvals.transpose();

  std::vector<Triplet> trips;
  for (int fi = 0; fi < mesh.n_facets(); ++fi) {
    const Facet& facet = mesh.facets[fi];
    double scale = facet.h_F * facet.measure / facet_ref_measure(mesh.dim);
    for (int i = 0; i < layout.nb_l; ++i)
      for (int j = 0; j < layout.nb_l; ++j)
        trips.emplace_back(fi * layout.nb_l + i, fi * layout.nb_l + j, scale * ref_mass(i, j));
  }
  return from_triplets(layout.n_l, layout.n_l, trips);
}

SpMat assemble_gram_1h(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config) {
  // Same structure as assemble_A with eta/h_F -> 1/h_F and no consistency
  // terms: the quadratic form is exactly ||.||_{1,h}^2.
  const int dim = mesh.dim;
  const int nb = layout.nb_u;
  PolyBasis basis = velocity_basis(dim, layout.k);
  QuadratureRule cell_rule = quadrature(dim, config.cell_quad_degree);
  QuadratureRule facet_rule = quadrature(dim - 1, config.facet_quad_degree);

  Mat ref_vals;
  std::vector<Mat> ref_grads;
  basis.eval(cell_rule.points, ref_vals, ref_grads);

  std::vector<Triplet> trips;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    CellGeometry geo(mesh, c);
    std::vector<Mat> grads;
    physical_gradients(geo, ref_grads, grads);
    Mat Ke = Mat::Zero(nb, nb);
    for (int d = 0; d < dim; ++d)
      Ke += grads[d] * (cell_rule.weights * geo.detJ).asDiagonal() * grads[d].transpose();
    for (int comp = 0; comp < dim; ++comp)
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j)
          trips.emplace_back(layout.u_dof(c, comp, i), layout.u_dof(c, comp, j), Ke(i, j));
  }

  for (const auto& facet : mesh.facets) {
    Mat X;
    Vec w;
    auto sides = facet_sides(mesh, facet, basis, facet_rule, X, w);
    for (const auto& s : sides)
      for (const auto& t : sides) {
        Mat block =
            (s.sign * t.sign / facet.h_F) * (s.values * w.asDiagonal() * t.values.transpose());
        for (int comp = 0; comp < dim; ++comp)
          for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j)
              trips.emplace_back(layout.u_dof(s.cell, comp, i), layout.u_dof(t.cell, comp, j),
                                 block(i, j));
      }
  }
  return from_triplets(layout.n_u, layout.n_u, trips);
}

Vec assemble_rhs(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config,
                 const ManufacturedSolution& ms) {
  const int dim = mesh.dim;
  const int nb = layout.nb_u;
  PolyBasis ubasis = velocity_basis(dim, layout.k);
  PolyBasis lbasis = PolyBasis::nodal(dim - 1, layout.k);
  QuadratureRule cell_rule = quadrature(dim, config.cell_quad_degree);
  QuadratureRule facet_rule = quadrature(dim - 1, config.facet_quad_degree);
  Mat lvals = lbasis.eval(facet_rule.points);

  Mat ref_vals;
  std::vector<Mat> ref_grads;
  ubasis.eval(cell_rule.points, ref_vals, ref_grads);

  Vec rhs = Vec::Zero(layout.total());

  // Body force: int_K f . v
  for (int c = 0; c < mesh.n_cells(); ++c) {
    CellGeometry geo(mesh, c);
    Vec v0 = mesh.cell_vertex(c, 0);
    Mat fvals(dim, cell_rule.size());
    for (int q = 0; q < cell_rule.size(); ++q)
      fvals.col(q) = ms.body_force(v0 + geo.J * cell_rule.points.col(q));
    for (int comp = 0; comp < dim; ++comp) {
      Vec local = ref_vals * (cell_rule.weights * geo.detJ).asDiagonal() * fvals.row(comp).transpose();
      for (int i = 0; i < nb; ++i) rhs[layout.u_dof(c, comp, i)] += local[i];
    }
  }

  // Boundary facets: Nitsche terms on the velocity block and the
  // multiplier right-hand side int_F (g.n) xi.
  for (int fi : mesh.boundary_facet_ids) {
    const Facet& facet = mesh.facets[fi];
    Mat X;
    Vec w;
    auto sides = facet_sides(mesh, facet, ubasis, facet_rule, X, w);
    const FacetSide& s = sides[0];
    Vec n = facet.normal.head(dim);
    const double pen = config.eta / facet.h_F;

    Mat gvals(dim, X.cols());
    for (int q = 0; q < X.cols(); ++q) gvals.col(q) = ms.boundary(X.col(q));

    Mat dn = Mat::Zero(nb, X.cols());
    for (int d = 0; d < dim; ++d) dn += n[d] * s.grads[d];

    for (int comp = 0; comp < dim; ++comp) {
      Vec g_comp = gvals.row(comp).transpose();
      Vec local = pen * (s.values * w.asDiagonal() * g_comp) - dn * w.asDiagonal() * g_comp;
      for (int i = 0; i < nb; ++i) rhs[layout.u_dof(s.cell, comp, i)] += local[i];
    }

    Vec gn = (gvals.transpose() * n); // g.n at quadrature points
    Vec local_l = lvals * w.asDiagonal() * gn;
    for (int i = 0; i < layout.nb_l; ++i) rhs[layout.l_dof(fi, i)] += local_l[i];
  }

  return rhs;
}

Vec nullspace_vector(const Mesh& mesh, const DofLayout& layout) {
  Vec n0 = Vec::Zero(layout.total());
  Vec cp = constant_coefficients(PolyBasis::orthonormal(mesh.dim, layout.k - 1));
  Vec cl = constant_coefficients(PolyBasis::nodal(mesh.dim - 1, layout.k));
  for (int c = 0; c < layout.n_cells; ++c)
    for (int i = 0; i < layout.nb_p; ++i) n0[layout.p_dof(c, i)] = cp[i];
  for (int f = 0; f < layout.n_facets; ++f)
    for (int i = 0; i < layout.nb_l; ++i) n0[layout.l_dof(f, i)] = cl[i];
  return n0;
}

double compute_norm_1h(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config,
                       const Vec& u) {
  SpMat G = assemble_gram_1h(mesh, layout, config);
  return std::sqrt(std::max(0.0, u.dot(G * u)));
}

double compute_norm_lambda(const Mesh& mesh, const DofLayout& layout,
                           const AssemblyConfig& config, const Vec& xi) {
  SpMat M = assemble_mass_M(mesh, layout, config);
  return std::sqrt(std::max(0.0, xi.dot(M * xi)));
}

double check_divergence(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config,
                        const Vec& u) {
  const int dim = mesh.dim;
  PolyBasis basis = velocity_basis(dim, layout.k);
  QuadratureRule rule = quadrature(dim, config.cell_quad_degree);
  Mat vals;
  std::vector<Mat> ref_grads;
  basis.eval(rule.points, vals, ref_grads);

  double worst = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    CellGeometry geo(mesh, c);
    std::vector<Mat> grads;
    physical_gradients(geo, ref_grads, grads);
    for (int q = 0; q < rule.size(); ++q) {
      double div = 0.0;
      for (int comp = 0; comp < dim; ++comp)
        for (int j = 0; j < layout.nb_u; ++j)
          div += u[layout.u_dof(c, comp, j)] * grads[comp](j, q);
      worst = std::max(worst, std::abs(div));
    }
  }
  return worst;
}

double check_normal_jumps(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config,
                          const Vec& u) {
  const int dim = mesh.dim;
  PolyBasis basis = velocity_basis(dim, layout.k);
  QuadratureRule rule = quadrature(dim - 1, config.facet_quad_degree);

  double worst = 0.0;
  for (const auto& facet : mesh.facets) {
    if (facet.is_boundary()) continue;
    Mat X;
    Vec w;
    auto sides = facet_sides(mesh, facet, basis, rule, X, w);
    Vec n = facet.normal.head(dim);
    for (int q = 0; q < X.cols(); ++q) {
      double jump = 0.0;
      for (const auto& s : sides)
        for (int comp = 0; comp < dim; ++comp)
          for (int j = 0; j < layout.nb_u; ++j)
            jump += s.sign * n[comp] * u[layout.u_dof(s.cell, comp, j)] * s.values(j, q);
      worst = std::max(worst, std::abs(jump));
    }
  }
  return worst;
}

Vec project_velocity(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config,
                     const std::function<Vec(const Vec&)>& f) {
  const int dim = mesh.dim;
  PolyBasis basis = velocity_basis(dim, layout.k);
  QuadratureRule rule = quadrature(dim, config.cell_quad_degree);
  Mat vals = basis.eval(rule.points);
  Mat ref_mass = vals * rule.weights.asDiagonal() * vals.transpose();
  Eigen::LLT<Mat> mass(ref_mass);

  Vec u = Vec::Zero(layout.n_u);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    CellGeometry geo(mesh, c);
    Vec v0 = mesh.cell_vertex(c, 0);
    Mat fvals(dim, rule.size());
    for (int q = 0; q < rule.size(); ++q) fvals.col(q) = f(v0 + geo.J * rule.points.col(q));
    for (int comp = 0; comp < dim; ++comp) {
      Vec b = vals * rule.weights.asDiagonal() * fvals.row(comp).transpose();
      Vec coeffs = mass.solve(b);
      for (int i = 0; i < layout.nb_u; ++i) u[layout.u_dof(c, comp, i)] = coeffs[i];
    }
  }
  return u;
}

Vec project_pressure(const Mesh& mesh, const DofLayout& layout, const AssemblyConfig& config,
                     const std::function<double(const Vec&)>& f) {
  PolyBasis basis = PolyBasis::orthonormal(mesh.dim, layout.k - 1);
  QuadratureRule rule = quadrature(mesh.dim, config.cell_quad_degree);
  Mat vals = basis.eval(rule.points);
  Mat ref_mass = vals * rule.weights.asDiagonal() * vals.transpose();
  Eigen::LLT<Mat> mass(ref_mass);

  Vec p = Vec::Zero(layout.n_p);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    CellGeometry geo(mesh, c);
    Vec v0 = mesh.cell_vertex(c, 0);
    Vec fvals(rule.size());
    for (int q = 0; q < rule.size(); ++q) fvals[q] = f(v0 + geo.J * rule.points.col(q));
    Vec coeffs = mass.solve(vals * rule.weights.asDiagonal() * fvals);
    for (int i = 0; i < layout.nb_p; ++i) p[c * layout.nb_p + i] = coeffs[i];
  }
  return p;
}

FieldErrors compute_errors(const Mesh& mesh, const DofLayout& layout,
                           const AssemblyConfig& config, const Vec& x,
                           const ManufacturedSolution& ms) {
  const int dim = mesh.dim;
  PolyBasis ubasis = velocity_basis(dim, layout.k);
  PolyBasis pbasis = PolyBasis::orthonormal(dim, layout.k - 1);
  QuadratureRule rule = quadrature(dim, config.cell_quad_degree + 2);
  Mat uvals = ubasis.eval(rule.points);
  Mat pvals = pbasis.eval(rule.points);

  FieldErrors err;
  double u_err2 = 0.0;
  double p_diff_int = 0.0, volume = 0.0;

  // First pass: velocity error and mean of (p_h - p_exact).
  std::vector<Mat> p_diff(mesh.n_cells()); // cached pointwise pressure mismatch
  for (int c = 0; c < mesh.n_cells(); ++c) {
    CellGeometry geo(mesh, c);
    Vec v0 = mesh.cell_vertex(c, 0);
    Mat pd(1, rule.size());
    for (int q = 0; q < rule.size(); ++q) {
      Vec xq = v0 + geo.J * rule.points.col(q);
      Vec uh = Vec::Zero(dim);
      for (int comp = 0; comp < dim; ++comp)
        for (int j = 0; j < layout.nb_u; ++j)
          uh[comp] += x[layout.u_dof(c, comp, j)] * uvals(j, q);
      err.u_max = std::max(err.u_max, uh.cwiseAbs().maxCoeff());
      u_err2 += geo.detJ * rule.weights[q] * (uh - ms.velocity(xq)).squaredNorm();

      double ph = 0.0;
      for (int j = 0; j < layout.nb_p; ++j) ph += x[layout.p_dof(c, j)] * pvals(j, q);
      pd(0, q) = ph - ms.pressure(xq);
      p_diff_int += geo.detJ * rule.weights[q] * pd(0, q);
    }
    p_diff[c] = pd;
    volume += geo.detJ * rule.weights.sum();
  }
  double mean = p_diff_int / volume;

  double p_err2 = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    double detJ = CellGeometry(mesh, c).detJ;
    for (int q = 0; q < rule.size(); ++q) {
      double d = p_diff[c](0, q) - mean;
      p_err2 += detJ * rule.weights[q] * d * d;
    }
  }

  err.u_l2 = std::sqrt(u_err2);
  err.p_l2 = std::sqrt(p_err2);
  return err;
}

SpMat BlockSystem::full() const {
  const int nu = layout.n_u, np = layout.n_p, nl = layout.n_l;
  std::vector<Triplet> trips;
  trips.reserve(A.nonZeros() + 2 * B.nonZeros() + 2 * C.nonZeros());
  auto add = [&trips](const SpMat& m, int r0, int c0, bool also_transpose) {
    for (int i = 0; i < m.outerSize(); ++i)
      for (SpMat::InnerIterator it(m, i); it; ++it) {
        trips.emplace_back(r0 + static_cast<int>(it.row()), c0 + static_cast<int>(it.col()),
                           it.value());
        if (also_transpose)
          trips.emplace_back(c0 + static_cast<int>(it.col()), r0 + static_cast<int>(it.row()),
                             it.value());
      }
  };
  add(A, 0, 0, false);
  add(B, nu, 0, true);
  add(C, nu + np, 0, true);
  SpMat full(nu + np + nl, nu + np + nl);
  full.setFromTriplets(trips.begin(), trips.end());
  full.makeCompressed();
  return full;
}

Vec BlockSystem::apply(const Vec& x) const {
  const int nu = layout.n_u, np = layout.n_p, nl = layout.n_l;
  Vec xu = x.head(nu), xp = x.segment(nu, np), xl = x.tail(nl);
  Vec y(layout.total());
  y.head(nu) = A * xu + B.transpose() * xp + C.transpose() * xl;
  y.segment(nu, np) = B * xu;
  y.tail(nl) = C * xu;
  return y;
}

BlockSystem assemble_system(const Mesh& mesh, const DofLayout& layout,
                            const AssemblyConfig& config, const ManufacturedSolution& ms) {
  BlockSystem sys;
  sys.layout = layout;
  sys.A = assemble_A(mesh, layout, config);
  sys.B = assemble_B(mesh, layout, config);
  sys.C = assemble_C(mesh, layout, config);
  sys.Q = assemble_mass_Q(mesh, layout, config);
  sys.M = assemble_mass_M(mesh, layout, config);
  sys.rhs = assemble_rhs(mesh, layout, config, ms);
  sys.nullspace = nullspace_vector(mesh, layout);
  return sys;
}

} // namespace stokeshp
