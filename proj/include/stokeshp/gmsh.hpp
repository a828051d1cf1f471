#pragma once

#include <iosfwd>
#include <string>

#include "stokeshp/mesh.hpp"

namespace stokeshp {

/// Reads a Gmsh MSH file (ASCII versions 2.2 and 4.1). Volume elements must
/// be 3-node triangles (type 2) or 4-node tetrahedra (type 4); lower
/// dimensional elements are ignored. Binary files and other element types
/// are rejected.
Mesh read_gmsh(const std::string& path);
Mesh read_gmsh(std::istream& in);

/// Writes the mesh as MSH 2.2 ASCII (used to generate test fixtures).
void write_gmsh_v22(const Mesh& mesh, const std::string& path);

} // namespace stokeshp
