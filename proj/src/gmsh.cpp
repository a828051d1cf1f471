#include "stokeshp/gmsh.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace stokeshp {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("read_gmsh: " + msg);
}

std::string next_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    // strip trailing CR from DOS files
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return line;
  }
  fail("unexpected end of file");
}

void skip_to_end(std::istream& in, const std::string& tag) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "$End" + tag) return;
  }
  fail("missing $End" + tag);
}

struct RawMesh {
  std::map<long, Vec> nodes;           // tag -> coords (3)
  std::vector<std::vector<long>> tris; // node tags
  std::vector<std::vector<long>> tets;

  void add_element(int type, const std::vector<long>& conn) {
    switch (type) {
      case 2: tris.push_back(conn); break;
      case 4: tets.push_back(conn); break;
      case 1: case 8: case 15:
        break; // points and lines: ignored
      default:
        fail("unsupported element type " + std::to_string(type));
    }
  }

  Mesh build() const {
    Mesh mesh;
    const bool is3d = !tets.empty();
    if (is3d && !tris.empty()) {
      // triangles in a 3d file are surface elements; ignore them
    }
    if (!is3d && tris.empty()) fail("no triangles or tetrahedra found");
    mesh.dim = is3d ? 3 : 2;

    std::map<long, int> renum;
    for (const auto& [tag, xyz] : nodes) renum.emplace(tag, static_cast<int>(renum.size()));
    mesh.vertices.resize(mesh.dim, static_cast<int>(nodes.size()));
    for (const auto& [tag, xyz] : nodes)
      mesh.vertices.col(renum.at(tag)) = xyz.head(mesh.dim);

    const auto& cells = is3d ? tets : tris;
    mesh.cells.resize(mesh.dim + 1, static_cast<int>(cells.size()));
    for (size_t c = 0; c < cells.size(); ++c)
      for (int i = 0; i <= mesh.dim; ++i) {
        auto it = renum.find(cells[c][i]);
        if (it == renum.end()) fail("element references unknown node");
        mesh.cells(i, static_cast<int>(c)) = it->second;
      }
    mesh.finalize();
    return mesh;
  }
};

void read_v22(std::istream& in, RawMesh& raw) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "$Nodes") {
      long n = std::stol(next_line(in));
      for (long i = 0; i < n; ++i) {
        std::istringstream ls(next_line(in));
        long tag;
        Vec xyz(3);
        ls >> tag >> xyz[0] >> xyz[1] >> xyz[2];
        if (!ls) fail("malformed node line");
        raw.nodes[tag] = xyz;
      }
      skip_to_end(in, "Nodes");
    } else if (line == "$Elements") {
      long n = std::stol(next_line(in));
      for (long i = 0; i < n; ++i) {
        std::istringstream ls(next_line(in));
        long tag;
        int type, ntags;
        ls >> tag >> type >> ntags;
        if (!ls) fail("malformed element line");
        long skip;
        for (int t = 0; t < ntags; ++t) ls >> skip;
        int nn = (type == 2) ? 3 : (type == 4) ? 4 : -1;
        if (nn < 0) {
          // ignored types: consume the rest of the line
          raw.add_element(type, {});
          continue;
        }
        std::vector<long> conn(nn);
        for (int v = 0; v < nn; ++v) ls >> conn[v];
        if (!ls) fail("malformed element connectivity");
        raw.add_element(type, conn);
      }
      skip_to_end(in, "Elements");
    }
    // other sections ($PhysicalNames, ...) fall through and are skipped
  }
}

void read_v41(std::istream& in, RawMesh& raw) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "$Nodes") {
      std::istringstream hs(next_line(in));
      long nblocks, nnodes, mintag, maxtag;
      hs >> nblocks >> nnodes >> mintag >> maxtag;
      if (!hs) fail("malformed $Nodes header");
      for (long b = 0; b < nblocks; ++b) {
        std::istringstream bs(next_line(in));
        int edim, etag, parametric;
        long nb;
        bs >> edim >> etag >> parametric >> nb;
        if (!bs) fail("malformed node block header");
        std::vector<long> tags(nb);
        for (long i = 0; i < nb; ++i) tags[i] = std::stol(next_line(in));
        for (long i = 0; i < nb; ++i) {
          std::istringstream ls(next_line(in));
          Vec xyz(3);
          ls >> xyz[0] >> xyz[1] >> xyz[2];
          if (!ls) fail("malformed node coordinates");
          raw.nodes[tags[i]] = xyz;
        }
      }
      skip_to_end(in, "Nodes");
    } else if (line == "$Elements") {
      std::istringstream hs(next_line(in));
      long nblocks, nelem, mintag, maxtag;
      hs >> nblocks >> nelem >> mintag >> maxtag;
      if (!hs) fail("malformed $Elements header");
      for (long b = 0; b < nblocks; ++b) {
        std::istringstream bs(next_line(in));
        int edim, etag, type;
        long nb;
        bs >> edim >> etag >> type >> nb;
        if (!bs) fail("malformed element block header");
        int nn = (type == 2) ? 3 : (type == 4) ? 4 : -1;
        for (long i = 0; i < nb; ++i) {
          std::istringstream ls(next_line(in));
          long tag;
          ls >> tag;
          if (nn < 0) {
            raw.add_element(type, {}); // rejects unsupported volume types
            continue;
          }
          std::vector<long> conn(nn);
          for (int v = 0; v < nn; ++v) ls >> conn[v];
          if (!ls) fail("malformed element connectivity");
          raw.add_element(type, conn);
        }
      }
      skip_to_end(in, "Elements");
    }
  }
}

} // namespace

Mesh read_gmsh(std::istream& in) {
  std::string line = next_line(in);
  if (line != "$MeshFormat") fail("missing $MeshFormat");
  std::istringstream fs(next_line(in));
  double version;
  int filetype, datasize;
  fs >> version >> filetype >> datasize;
  if (!fs) fail("malformed $MeshFormat");
  if (filetype != 0) fail("binary MSH files are not supported");
  skip_to_end(in, "MeshFormat");

  RawMesh raw;
  if (version >= 2.19 && version < 2.31) {
    read_v22(in, raw);
  } else if (version >= 4.05 && version < 4.15) {
    read_v41(in, raw);
  } else {
    fail("unsupported MSH version " + std::to_string(version));
  }
  return raw.build();
}

Mesh read_gmsh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_gmsh: cannot open " + path);
  return read_gmsh(in);
}

void write_gmsh_v22(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_gmsh_v22: cannot open " + path);
  out.precision(17);
  out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n" << mesh.n_vertices() << "\n";
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    out << (v + 1);
    for (int d = 0; d < 3; ++d) out << ' ' << (d < mesh.dim ? mesh.vertices(d, v) : 0.0);
    out << '\n';
  }
  out << "$EndNodes\n$Elements\n" << mesh.n_cells() << "\n";
  const int type = mesh.dim == 2 ? 2 : 4;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    out << (c + 1) << ' ' << type << " 2 0 1";
    for (int i = 0; i <= mesh.dim; ++i) out << ' ' << (mesh.cells(i, c) + 1);
    out << '\n';
  }
  out << "$EndElements\n";
}

} // namespace stokeshp
