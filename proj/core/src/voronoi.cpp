#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>
#include <utility>

#include "fhnvem/mesh.hpp"

namespace fhnvem {

namespace {

// Sutherland-Hodgman clip of a convex CCW polygon against the half-plane
// n . x <= c. Points exactly on the line are kept.
std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& poly, const Vec2& n, double c) {
  std::vector<Vec2> out;
  out.reserve(poly.size() + 1);
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    const double da = c - n.dot(a);  // >= 0 means inside
    const double db = c - n.dot(b);
    if (da >= 0.0) {
      if (db >= 0.0) {
        out.push_back(b);
      } else {
        const double t = da / (da - db);
        out.push_back(a + t * (b - a));
      }
    } else if (db >= 0.0) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
      out.push_back(b);
    }
  }
  return out;
}

// Voronoi cell of seeds[i], clipped to the domain rectangle. Neighbours are
// visited by increasing distance; once the next seed is farther than twice
// the current largest vertex-to-seed distance its bisector cannot cut the
// polygon any more, so the scan stops (the polygon only ever shrinks).
std::vector<Vec2> voronoi_cell(const std::vector<Vec2>& seeds, int i, const Rect& rect) {
  std::vector<Vec2> poly = {{rect.x0, rect.y0}, {rect.x1, rect.y0},
                            {rect.x1, rect.y1}, {rect.x0, rect.y1}};
  const Vec2 si = seeds[i];
  const int n = static_cast<int>(seeds.size());

  std::vector<std::pair<double, int>> order;
  order.reserve(n - 1);
  for (int j = 0; j < n; ++j)
    if (j != i) order.push_back({(seeds[j] - si).squared_norm(), j});
  // For large seed sets only the nearest few dozen seeds ever matter; sort a
  // prefix and fall back to a full sort in the (rare) case it gets exhausted.
  std::size_t sorted = order.size();
  if (order.size() > 512) {
    sorted = 96;
    std::nth_element(order.begin(), order.begin() + sorted, order.end());
    std::sort(order.begin(), order.begin() + sorted);
  } else {
    std::sort(order.begin(), order.end());
  }

  double max_d2 = 0.0;
  for (const Vec2& p : poly) max_d2 = std::max(max_d2, (p - si).squared_norm());

  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == sorted) {  // prefix exhausted
      std::sort(order.begin() + sorted, order.end());
      sorted = order.size();
    }
    const auto [d2, j] = order[k];
    if (d2 > 4.0 * max_d2) break;
    if (d2 == 0.0) throw MeshError("voronoi: coincident seeds");
    const Vec2 diff = seeds[j] - si;
    const double dist = std::sqrt(d2);
    const Vec2 normal = diff / dist;
    const double c = normal.dot(si) + 0.5 * dist;
    poly = clip_half_plane(poly, normal, c);
    if (poly.size() < 3) throw MeshError("voronoi: degenerate cell");
    max_d2 = 0.0;
    for (const Vec2& p : poly) max_d2 = std::max(max_d2, (p - si).squared_norm());
  }
  return poly;
}

std::vector<std::vector<Vec2>> voronoi_diagram(const std::vector<Vec2>& seeds,
                                               const Rect& rect) {
  std::vector<std::vector<Vec2>> cells(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i)
    cells[i] = voronoi_cell(seeds, static_cast<int>(i), rect);
  return cells;
}

// Welds nearly coincident points (the same Voronoi vertex computed from two
// adjacent cells differs by rounding only) into shared mesh vertices via a
// quantized spatial hash. First occurrence wins, which keeps coordinates that
// were computed exactly on the boundary exact.
class VertexWelder {
 public:
  explicit VertexWelder(double tol) : tol_(tol) {}

  int find_or_add(const Vec2& p, std::vector<Vec2>& vertices) {
    const long long ix = static_cast<long long>(std::llround(p.x / tol_));
    const long long iy = static_cast<long long>(std::llround(p.y / tol_));
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find(key(ix + dx, iy + dy));
        if (it == grid_.end()) continue;
        for (int id : it->second) {
          if (std::abs(vertices[id].x - p.x) <= tol_ && std::abs(vertices[id].y - p.y) <= tol_)
            return id;
        }
      }
    }
    const int id = static_cast<int>(vertices.size());
    vertices.push_back(p);
    grid_[key(ix, iy)].push_back(id);
    return id;
  }

 private:
  static std::uint64_t key(long long ix, long long iy) {
    return static_cast<std::uint64_t>(ix) * 0x9e3779b97f4a7c15ull ^
           static_cast<std::uint64_t>(iy);
  }
  double tol_;
  std::unordered_map<std::uint64_t, std::vector<int>> grid_;
};

// Random tessellations contain arbitrarily short edges where three bisectors
// almost meet; these violate the shortest-edge/diameter regularity floor the
// generated families promise. Contract any edge shorter than `ratio` times
// the diameter of an incident cell by merging its endpoint ids, which keeps
// the tessellation conforming (every cell referencing an endpoint sees the
// same replacement). Vertices on the domain boundary only ever absorb
// interior ones or slide along their own side, so the rectangle stays exactly
// covered.
void collapse_short_edges(std::vector<Vec2>& vertices, std::vector<std::vector<int>>& cell_ids,
                          const Rect& rect, double ratio) {
  const auto side_mask = [&rect](const Vec2& p) {
    int mask = 0;
    if (p.x == rect.x0) mask |= 1;
    if (p.x == rect.x1) mask |= 2;
    if (p.y == rect.y0) mask |= 4;
    if (p.y == rect.y1) mask |= 8;
    return mask;
  };
  const auto is_corner = [](int mask) { return (mask & 3) != 0 && (mask & 12) != 0; };
  const auto nearest_corner = [&rect](const Vec2& p) {
    return Vec2{std::abs(p.x - rect.x0) <= std::abs(p.x - rect.x1) ? rect.x0 : rect.x1,
                std::abs(p.y - rect.y0) <= std::abs(p.y - rect.y1) ? rect.y0 : rect.y1};
  };

  for (int pass = 0; pass < 32; ++pass) {
    // longest incident cell diameter per edge, edges keyed (low id, high id)
    std::map<std::pair<int, int>, double> edge_limit;
    for (const std::vector<int>& ids : cell_ids) {
      double diam2 = 0.0;
      for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
          diam2 = std::max(diam2, (vertices[ids[i]] - vertices[ids[j]]).squared_norm());
      const double diam = std::sqrt(diam2);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        const int a = ids[i], b = ids[(i + 1) % ids.size()];
        auto& limit = edge_limit[{std::min(a, b), std::max(a, b)}];
        limit = std::max(limit, diam);
      }
    }

    std::vector<int> remap(vertices.size());
    for (std::size_t i = 0; i < remap.size(); ++i) remap[i] = static_cast<int>(i);
    std::vector<char> touched(vertices.size(), 0);
    int merges = 0;
    for (const auto& [edge, limit] : edge_limit) {
      const auto [a, b] = edge;
      if (touched[a] || touched[b]) continue;
      if ((vertices[a] - vertices[b]).norm() >= ratio * limit) continue;

      const int ma = side_mask(vertices[a]);
      const int mb = side_mask(vertices[b]);
      int keep = a, drop = b;
      Vec2 pos;
      if (is_corner(ma) && is_corner(mb)) {
        continue;  // distinct domain corners never merge
      } else if (is_corner(ma)) {
        pos = vertices[a];
      } else if (is_corner(mb)) {
        keep = b;
        drop = a;
        pos = vertices[b];
      } else if (ma != 0 && mb != 0) {
        if ((ma & mb) != 0) {
          pos = 0.5 * (vertices[a] + vertices[b]);  // shared side coordinate stays exact
        } else {
          pos = nearest_corner(vertices[a]);  // edge spans two sides: meet at the corner
        }
      } else if (ma != 0) {
        pos = vertices[a];
      } else if (mb != 0) {
        keep = b;
        drop = a;
        pos = vertices[b];
      } else {
        pos = 0.5 * (vertices[a] + vertices[b]);
      }

      vertices[keep] = pos;
      remap[drop] = keep;
      touched[a] = touched[b] = 1;
      ++merges;
    }
    if (merges == 0) break;

    for (std::vector<int>& ids : cell_ids) {
      std::vector<int> next;
      next.reserve(ids.size());
      for (int id : ids) {
        const int mapped = remap[id];
        if (next.empty() || next.back() != mapped) next.push_back(mapped);
      }
      while (next.size() > 1 && next.front() == next.back()) next.pop_back();
      if (next.size() < 3) throw MeshError("voronoi: cell collapsed during short-edge cleanup");
      ids = std::move(next);
    }
  }

  // compact away the dropped vertex slots
  std::vector<int> order(vertices.size(), -1);
  std::vector<Vec2> compact;
  for (std::vector<int>& ids : cell_ids) {
    for (int& id : ids) {
      if (order[id] < 0) {
        order[id] = static_cast<int>(compact.size());
        compact.push_back(vertices[id]);
      }
      id = order[id];
    }
  }
  vertices = std::move(compact);
}

PolygonalMesh mesh_from_voronoi_cells(const std::vector<std::vector<Vec2>>& cells,
                                      const Rect& rect) {
  const double weld_tol = 1e-9 * rect.diagonal();
  const double snap_tol = 1e-12 * rect.diagonal();
  VertexWelder welder(weld_tol);
  std::vector<Vec2> vertices;
  std::vector<std::vector<int>> cell_ids;
  cell_ids.reserve(cells.size());

  for (const std::vector<Vec2>& poly : cells) {
    std::vector<int> ids;
    ids.reserve(poly.size());
    for (Vec2 p : poly) {
      // nudge coordinates that are a rounding error away from a domain side
      // exactly onto it
      if (std::abs(p.x - rect.x0) <= snap_tol) p.x = rect.x0;
      if (std::abs(p.x - rect.x1) <= snap_tol) p.x = rect.x1;
      if (std::abs(p.y - rect.y0) <= snap_tol) p.y = rect.y0;
      if (std::abs(p.y - rect.y1) <= snap_tol) p.y = rect.y1;
      const int id = welder.find_or_add(p, vertices);
      if (ids.empty() || ids.back() != id) ids.push_back(id);
    }
    while (ids.size() > 1 && ids.front() == ids.back()) ids.pop_back();
    if (ids.size() < 3) throw MeshError("voronoi: cell collapsed during welding");
    cell_ids.push_back(std::move(ids));
  }
  // regularity floor 0.05 with headroom so post-collapse edges clear it
  collapse_short_edges(vertices, cell_ids, rect, 0.06);
  return build_mesh(rect, std::move(vertices), std::move(cell_ids));
}

PolygonalMesh voronoi_pipeline(std::vector<Vec2> seeds, int lloyd_iterations,
                               const Rect& rect) {
  for (const Vec2& s : seeds)
    if (!rect.contains(s)) throw MeshError("voronoi: seed outside the domain");

  for (int sweep = 0; sweep < lloyd_iterations; ++sweep) {
    std::vector<std::vector<Vec2>> cells = voronoi_diagram(seeds, rect);
    for (std::size_t i = 0; i < seeds.size(); ++i)
      seeds[i] = polygon_centroid(cells[i]);  // clipped cells are convex, centroid inside
  }
  return mesh_from_voronoi_cells(voronoi_diagram(seeds, rect), rect);
}

}  // namespace

PolygonalMesh generate_voronoi_mesh_from_seeds(std::vector<Vec2> seeds, int lloyd_iterations,
                                               Rect domain) {
  if (seeds.empty()) throw MeshError("generate_voronoi_mesh_from_seeds: no seeds");
  if (lloyd_iterations < 0)
    throw MeshError("generate_voronoi_mesh_from_seeds: negative Lloyd iteration count");

  // Perturb-and-retry: degenerate seed configurations (coincident seeds,
  // cells collapsing in the weld) get a tiny deterministic jitter.
  std::string last_error;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Vec2> trial = seeds;
    if (attempt > 0) {
      std::mt19937_64 rng(0x5eedULL + attempt);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      const double eps = 1e-7 * domain.diagonal() * attempt;
      for (Vec2& s : trial) {
        s.x = std::clamp(s.x + eps * u(rng), domain.x0, domain.x1);
        s.y = std::clamp(s.y + eps * u(rng), domain.y0, domain.y1);
      }
    }
    try {
      return voronoi_pipeline(std::move(trial), lloyd_iterations, domain);
    } catch (const MeshError& err) {
      last_error = err.what();
    }
  }
  throw MeshError("generate_voronoi_mesh_from_seeds: failed after 3 attempts (" + last_error +
                  ")");
}

PolygonalMesh generate_voronoi_mesh(int n_seeds, int lloyd_iterations, std::uint64_t seed,
                                    Rect domain) {
  if (n_seeds < 1) throw MeshError("generate_voronoi_mesh: n_seeds must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec2> seeds;
  seeds.reserve(n_seeds);
  for (int i = 0; i < n_seeds; ++i) {
    const double x = domain.x0 + domain.width() * u(rng);
    const double y = domain.y0 + domain.height() * u(rng);
    seeds.push_back({x, y});
  }
  return generate_voronoi_mesh_from_seeds(std::move(seeds), lloyd_iterations, domain);
}

}  // namespace fhnvem
