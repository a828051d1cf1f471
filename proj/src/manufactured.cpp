#include "stokeshp/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stokeshp {

namespace {
constexpr double pi = std::numbers::pi;
}

ManufacturedSolution ms_sine_2d() {
  ManufacturedSolution ms;
  ms.name = "sine2d";
  ms.dim = 2;
  ms.domain = Box::unit(2);
  ms.velocity = [](const Vec& x) {
    Vec u(2);
    u[0] = std::sin(pi * x[0]) * std::sin(pi * x[1]) + 2.0;
    u[1] = std::cos(pi * x[0]) * std::cos(pi * x[1]) - 1.0;
    return u;
  };
  ms.pressure = [](const Vec& x) { return std::sin(pi * x[0]) * std::cos(pi * x[1]); };
  // f = -lap(u) + grad(p), derived symbolically (sympy) and hard-coded.
  ms.body_force = [](const Vec& x) {
    Vec f(2);
    f[0] = 2.0 * pi * pi * std::sin(pi * x[0]) * std::sin(pi * x[1]) +
           pi * std::cos(pi * x[0]) * std::cos(pi * x[1]);
    f[1] = 2.0 * pi * pi * std::cos(pi * x[0]) * std::cos(pi * x[1]) -
           pi * std::sin(pi * x[0]) * std::sin(pi * x[1]);
    return f;
  };
  return ms;
}

ManufacturedSolution ms_trig_2d() {
  ManufacturedSolution ms;
  ms.name = "trig2d";
  ms.dim = 2;
  ms.domain.lo = Vec::Constant(2, -1.0);
  ms.domain.hi = Vec::Constant(2, 1.0);
  ms.velocity = [](const Vec& x) {
    Vec u(2);
    u[0] = std::sin(3 * x[0]) * std::sin(3 * x[1]);
    u[1] = std::cos(3 * x[0]) * std::cos(3 * x[1]);
    return u;
  };
  ms.pressure = [](const Vec& x) { return std::sin(pi * x[0]) * std::cos(pi * x[1]); };
  ms.body_force = [](const Vec& x) {
    Vec f(2);
    f[0] = 18.0 * std::sin(3 * x[0]) * std::sin(3 * x[1]) +
           pi * std::cos(pi * x[0]) * std::cos(pi * x[1]);
    f[1] = 18.0 * std::cos(3 * x[0]) * std::cos(3 * x[1]) -
           pi * std::sin(pi * x[0]) * std::sin(pi * x[1]);
    return f;
  };
  return ms;
}

ManufacturedSolution ms_trig_3d() {
  ManufacturedSolution ms;
  ms.name = "trig3d";
  ms.dim = 3;
  ms.domain = Box::unit(3);
  ms.velocity = [](const Vec& x) {
    Vec u(3);
    u[0] = pi * (std::sin(pi * x[0]) * std::cos(pi * x[1]) -
                 std::sin(pi * x[0]) * std::cos(pi * x[2]));
    u[1] = pi * (std::sin(pi * x[1]) * std::cos(pi * x[2]) -
                 std::cos(pi * x[0]) * std::sin(pi * x[1]));
    u[2] = pi * (std::cos(pi * x[0]) * std::sin(pi * x[2]) -
                 std::cos(pi * x[1]) * std::sin(pi * x[2]));
    return u;
  };
  ms.pressure = [](const Vec& x) {
    return std::sin(pi * x[0]) * std::cos(pi * x[1]) * std::sin(2 * pi * x[2]);
  };
  ms.body_force = [](const Vec& x) {
    const double p3 = 2.0 * pi * pi * pi;
    Vec f(3);
    f[0] = p3 * (std::sin(pi * x[0]) * std::cos(pi * x[1]) -
                 std::sin(pi * x[0]) * std::cos(pi * x[2])) +
           pi * std::cos(pi * x[0]) * std::cos(pi * x[1]) * std::sin(2 * pi * x[2]);
    f[1] = p3 * (std::sin(pi * x[1]) * std::cos(pi * x[2]) -
                 std::cos(pi * x[0]) * std::sin(pi * x[1])) -
           pi * std::sin(pi * x[0]) * std::sin(pi * x[1]) * std::sin(2 * pi * x[2]);
    f[2] = p3 * (std::cos(pi * x[0]) * std::sin(pi * x[2]) -
                 std::cos(pi * x[1]) * std::sin(pi * x[2])) +
           2 * pi * std::sin(pi * x[0]) * std::cos(pi * x[1]) * std::cos(2 * pi * x[2]);
    return f;
  };
  return ms;
}

ManufacturedSolution ms_poly(int dim) {
  ManufacturedSolution ms;
  ms.name = dim == 2 ? "poly2d" : "poly3d";
  ms.dim = dim;
  ms.domain = Box::unit(dim);
  if (dim == 2) {
    // u = curl(x^2 y) = (x^2, -2xy), p = x - 1/2
    ms.velocity = [](const Vec& x) {
      Vec u(2);
      u[0] = x[0] * x[0];
      u[1] = -2.0 * x[0] * x[1];
      return u;
    };
    ms.pressure = [](const Vec& x) { return x[0] - 0.5; };
    ms.body_force = [](const Vec&) {
      Vec f(2);
      f[0] = -1.0; // -lap(x^2) + d/dx(x - 1/2)
      f[1] = 0.0;
      return f;
    };
  } else if (dim == 3) {
    // u = (y^2, z^2, x^2) is divergence-free; p = x - 1/2
    ms.velocity = [](const Vec& x) {
      Vec u(3);
      u[0] = x[1] * x[1];
      u[1] = x[2] * x[2];
      u[2] = x[0] * x[0];
      return u;
    };
    ms.pressure = [](const Vec& x) { return x[0] - 0.5; };
    ms.body_force = [](const Vec&) {
      Vec f(3);
      f[0] = -1.0;
      f[1] = -2.0;
      f[2] = -2.0;
      return f;
    };
  } else {
    throw std::invalid_argument("ms_poly: dim must be 2 or 3");
  }
  return ms;
}

ManufacturedSolution manufactured_by_name(const std::string& name) {
  if (name == "sine2d") return ms_sine_2d();
  if (name == "trig2d") return ms_trig_2d();
  if (name == "trig3d") return ms_trig_3d();
  if (name == "poly2d") return ms_poly(2);
  if (name == "poly3d") return ms_poly(3);
  throw std::invalid_argument("unknown manufactured solution: " + name);
}

ManufacturedSolution default_manufactured(int dim) {
  return dim == 2 ? ms_sine_2d() : ms_trig_3d();
}

} // namespace stokeshp
