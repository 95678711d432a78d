#include "fhnvem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace fhnvem {

PolygonGeometry PolygonalMesh::cell_geometry(int cell) const {
  const Cell& c = cells.at(cell);
  std::vector<Vec2> verts;
  verts.reserve(c.vertex_ids.size());
  for (int id : c.vertex_ids) verts.push_back(vertices[id]);
  return PolygonGeometry::from_vertices(std::move(verts));
}

PolygonalMesh build_mesh(Rect domain, std::vector<Vec2> vertices,
                         std::vector<std::vector<int>> cell_vertex_ids) {
  if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0))
    throw MeshError("build_mesh: empty domain rectangle");
  if (cell_vertex_ids.empty()) throw MeshError("build_mesh: no cells");

  const int nv = static_cast<int>(vertices.size());
  const double geom_tol = 1e-12 * domain.diagonal();
  for (const Vec2& v : vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw MeshError("build_mesh: non-finite vertex coordinate");
    if (!domain.contains(v, geom_tol))
      throw MeshError("build_mesh: vertex outside the domain rectangle");
  }

  PolygonalMesh mesh;
  mesh.domain = domain;
  mesh.vertices = std::move(vertices);
  mesh.cells.reserve(cell_vertex_ids.size());

  std::vector<char> vertex_used(nv, 0);
  double total_area = 0.0;

  for (std::size_t c = 0; c < cell_vertex_ids.size(); ++c) {
    const std::vector<int>& ids = cell_vertex_ids[c];
    if (ids.size() < 3) throw MeshError("build_mesh: cell with fewer than 3 vertices");
    std::vector<Vec2> verts;
    verts.reserve(ids.size());
    for (int id : ids) {
      if (id < 0 || id >= nv) throw MeshError("build_mesh: vertex id out of range");
      vertex_used[id] = 1;
      verts.push_back(mesh.vertices[id]);
    }
    PolygonGeometry geom;
    try {
      geom = PolygonGeometry::from_vertices(std::move(verts));
    } catch (const std::invalid_argument& err) {
      throw MeshError("build_mesh: cell " + std::to_string(c) + ": " + err.what());
    }
    Cell cell;
    cell.vertex_ids = ids;
    cell.area = geom.area;
    cell.centroid = geom.centroid;
    cell.diameter = geom.diameter;
    total_area += cell.area;
    mesh.h = std::max(mesh.h, cell.diameter);
    mesh.cells.push_back(std::move(cell));
  }

  for (int id = 0; id < nv; ++id)
    if (!vertex_used[id]) throw MeshError("build_mesh: unreferenced vertex");

  // Edge table: every undirected edge belongs to one cell (boundary) or two
  // cells traversing it in opposite directions (conforming interior edge).
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edge_uses;
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    const std::vector<int>& ids = mesh.cells[c].vertex_ids;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int a = ids[i];
      const int b = ids[(i + 1) % ids.size()];
      edge_uses[{std::min(a, b), std::max(a, b)}].push_back({a, b});
    }
  }
  const double btol = 1e-9 * domain.diagonal();
  for (const auto& [key, uses] : edge_uses) {
    if (uses.size() > 2) throw MeshError("build_mesh: edge shared by more than two cells");
    if (uses.size() == 2) {
      if (uses[0].first != uses[1].second || uses[0].second != uses[1].first)
        throw MeshError("build_mesh: interior edge traversed twice in the same direction");
      mesh.interior_edges.push_back(key);
    } else {
      if (!mesh.domain.on_boundary(mesh.vertices[key.first], btol) ||
          !mesh.domain.on_boundary(mesh.vertices[key.second], btol))
        throw MeshError("build_mesh: single-cell edge not on the domain boundary");
      mesh.boundary_edges.push_back(key);
    }
  }

  if (std::abs(total_area - domain.area()) > 1e-10 * domain.area())
    throw MeshError("build_mesh: cell areas do not tile the domain");

  const long euler = static_cast<long>(mesh.num_vertices()) -
                     static_cast<long>(mesh.num_edges()) +
                     static_cast<long>(mesh.num_cells());
  if (euler != 1) throw MeshError("build_mesh: Euler characteristic V-E+F != 1");

  return mesh;
}

PolygonalMesh generate_square_mesh(int n, Rect domain) {
  if (n < 1) throw MeshError("generate_square_mesh: n must be >= 1");
  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const double x = (i == n) ? domain.x1 : domain.x0 + i * domain.width() / n;
      const double y = (j == n) ? domain.y1 : domain.y0 + j * domain.height() / n;
      vertices.push_back({x, y});
    }
  }
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::vector<int>> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
  return build_mesh(domain, std::move(vertices), std::move(cells));
}

PolygonalMesh generate_distorted_quad_mesh(int n, double amplitude, std::uint64_t seed,
                                           Rect domain) {
  if (n < 1) throw MeshError("generate_distorted_quad_mesh: n must be >= 1");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
    throw MeshError("generate_distorted_quad_mesh: amplitude must be finite and >= 0");

  const double cw = domain.width() / n;
  const double ch = domain.height() / n;
  std::string last_error;
  for (int attempt = 0; attempt < 5; ++attempt) {
    // halve the amplitude on each retry; the draw sequence stays the same
    const double amp = amplitude / static_cast<double>(1 << attempt);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);

    std::vector<Vec2> vertices;
    vertices.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= n; ++i) {
        const double x = (i == n) ? domain.x1 : domain.x0 + i * domain.width() / n;
        const double y = (j == n) ? domain.y1 : domain.y0 + j * domain.height() / n;
        if (i > 0 && i < n && j > 0 && j < n) {
          const double dx = amp * cw * u(rng);
          const double dy = amp * ch * u(rng);
          vertices.push_back({x + dx, y + dy});
        } else {
          vertices.push_back({x, y});
        }
      }
    }
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    std::vector<std::vector<int>> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
    try {
      return build_mesh(domain, std::move(vertices), std::move(cells));
    } catch (const MeshError& err) {
      last_error = err.what();
    }
  }
  throw MeshError("generate_distorted_quad_mesh: no valid mesh after 5 attempts (" +
                  last_error + ")");
}

MeshQualityReport check_mesh_assumptions(const PolygonalMesh& mesh, double threshold) {
  MeshQualityReport report;
  report.threshold = threshold;
  report.edge_ratios.reserve(mesh.cells.size());
  report.star_radius_ratios.reserve(mesh.cells.size());
  report.min_edge_ratio = std::numeric_limits<double>::infinity();
  report.min_star_radius_ratio = std::numeric_limits<double>::infinity();

  for (int c = 0; c < mesh.num_cells(); ++c) {
    const PolygonGeometry geom = mesh.cell_geometry(c);
    const double shortest =
        *std::min_element(geom.edge_lengths.begin(), geom.edge_lengths.end());
    const double edge_ratio = shortest / geom.diameter;
    const double star_ratio = polygon_kernel_radius(geom) / geom.diameter;
    report.edge_ratios.push_back(edge_ratio);
    report.star_radius_ratios.push_back(star_ratio);
    report.min_edge_ratio = std::min(report.min_edge_ratio, edge_ratio);
    report.min_star_radius_ratio = std::min(report.min_star_radius_ratio, star_ratio);
    if (edge_ratio < threshold || star_ratio < threshold) report.failing_cells.push_back(c);
  }
  report.pass = report.failing_cells.empty();
  return report;
}

}  // namespace fhnvem
