#include <fstream>
#include <sstream>
#include <string>

#include "fhnvem/format.hpp"
#include "fhnvem/mesh.hpp"

namespace fhnvem {

namespace {

// Text format, whitespace separated, doubles as shortest round-trip decimals:
//
//   POLYMESH 1
//   domain <x0> <y0> <x1> <y1>
//   vertices <count>
//   <x> <y>                      (one line per vertex)
//   cells <count>
//   <n_verts> <id ...>           (one line per cell, CCW)
std::string serialize_mesh(const PolygonalMesh& mesh) {
  std::ostringstream out;
  out << "POLYMESH 1\n";
  out << "domain " << format_double(mesh.domain.x0) << ' ' << format_double(mesh.domain.y0)
      << ' ' << format_double(mesh.domain.x1) << ' ' << format_double(mesh.domain.y1) << '\n';
  out << "vertices " << mesh.num_vertices() << '\n';
  for (const Vec2& v : mesh.vertices)
    out << format_double(v.x) << ' ' << format_double(v.y) << '\n';
  out << "cells " << mesh.num_cells() << '\n';
  for (const Cell& c : mesh.cells) {
    out << c.vertex_ids.size();
    for (int id : c.vertex_ids) out << ' ' << id;
    out << '\n';
  }
  return out.str();
}

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw MeshError("load_mesh: " + path + ": " + what);
}

}  // namespace

void save_mesh(const PolygonalMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MeshError("save_mesh: cannot open " + path);
  out << serialize_mesh(mesh);
  if (!out) throw MeshError("save_mesh: write failed for " + path);
}

PolygonalMesh load_mesh(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail(path, "cannot open file");

  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != "POLYMESH") parse_fail(path, "bad header");
  if (version != 1) parse_fail(path, "unsupported version " + std::to_string(version));

  std::string keyword;
  Rect domain;
  if (!(in >> keyword) || keyword != "domain") parse_fail(path, "expected 'domain'");
  if (!(in >> domain.x0 >> domain.y0 >> domain.x1 >> domain.y1))
    parse_fail(path, "bad domain rectangle");

  std::size_t nv = 0;
  if (!(in >> keyword >> nv) || keyword != "vertices") parse_fail(path, "expected 'vertices'");
  std::vector<Vec2> vertices(nv);
  for (std::size_t i = 0; i < nv; ++i)
    if (!(in >> vertices[i].x >> vertices[i].y))
      parse_fail(path, "bad vertex " + std::to_string(i));

  std::size_t nc = 0;
  if (!(in >> keyword >> nc) || keyword != "cells") parse_fail(path, "expected 'cells'");
  std::vector<std::vector<int>> cells(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    std::size_t k = 0;
    if (!(in >> k) || k < 3) parse_fail(path, "bad cell size at cell " + std::to_string(c));
    cells[c].resize(k);
    for (std::size_t i = 0; i < k; ++i)
      if (!(in >> cells[c][i])) parse_fail(path, "bad vertex id in cell " + std::to_string(c));
  }
  std::string trailing;
  if (in >> trailing) parse_fail(path, "trailing content '" + trailing + "'");

  // full structural validation happens here as well
  return build_mesh(domain, std::move(vertices), std::move(cells));
}

std::uint64_t mesh_content_hash(const PolygonalMesh& mesh) {
  return fnv1a64(serialize_mesh(mesh));
}

}  // namespace fhnvem
