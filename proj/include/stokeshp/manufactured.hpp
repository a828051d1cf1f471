#pragma once

#include <functional>
#include <string>

#include "stokeshp/mesh.hpp"
#include "stokeshp/types.hpp"

namespace stokeshp {

/// Exact Stokes solution used to manufacture right-hand sides and measure
/// discretization errors. body_force = -laplacian(u) + grad(p); the boundary
/// datum is the trace of u. All velocities are divergence-free and all
/// pressures have zero mean over `domain`.
struct ManufacturedSolution {
  std::string name;
  int dim = 0;
  Box domain;
  std::function<Vec(const Vec&)> velocity;
  std::function<double(const Vec&)> pressure;
  std::function<Vec(const Vec&)> body_force;

  Vec boundary(const Vec& x) const { return velocity(x); }
};

/// u = [sin(pi x) sin(pi y) + 2, cos(pi x) cos(pi y) - 1],
/// p = sin(pi x) cos(pi y) on (0,1)^2.
ManufacturedSolution ms_sine_2d();

/// u = [sin(3x) sin(3y), cos(3x) cos(3y)], p = sin(pi x) cos(pi y)
/// on (-1,1)^2.
ManufacturedSolution ms_trig_2d();

/// u = pi [sin(pi x) cos(pi y) - sin(pi x) cos(pi z),
///         sin(pi y) cos(pi z) - cos(pi x) sin(pi y),
///         cos(pi x) sin(pi z) - cos(pi y) sin(pi z)],
/// p = sin(pi x) cos(pi y) sin(2 pi z) on (0,1)^3.
ManufacturedSolution ms_trig_3d();

/// Divergence-free polynomial solution of degree 2 (degree 1 pressure),
/// reproduced exactly by the k >= 2 discrete spaces on the unit box.
ManufacturedSolution ms_poly(int dim);

/// Lookup by name ("sine2d", "trig2d", "trig3d", "poly2d", "poly3d");
/// throws on unknown names.
ManufacturedSolution manufactured_by_name(const std::string& name);

/// Default solution for a dimension: sine2d in 2d, trig3d in 3d.
ManufacturedSolution default_manufactured(int dim);

} // namespace stokeshp
