#include "fhnvem/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fhnvem {

double polygon_signed_area(std::span<const Vec2> verts) {
  const std::size_t n = verts.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = verts[i];
    const Vec2& b = verts[(i + 1) % n];
    twice += a.cross(b);
  }
  return 0.5 * twice;
}

Vec2 polygon_centroid(std::span<const Vec2> verts) {
  const std::size_t n = verts.size();
  double cx = 0.0, cy = 0.0, twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = verts[i];
    const Vec2& b = verts[(i + 1) % n];
    const double w = a.cross(b);
    twice += w;
    cx += (a.x + b.x) * w;
    cy += (a.y + b.y) * w;
  }
  const double area6 = 3.0 * twice;
  if (area6 == 0.0) throw std::invalid_argument("polygon_centroid: zero-area polygon");
  return {cx / area6, cy / area6};
}

double polygon_diameter(std::span<const Vec2> verts) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      d2 = std::max(d2, (verts[i] - verts[j]).squared_norm());
  return std::sqrt(d2);
}

namespace {

// Orientation of c relative to segment a->b.
int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = (b - a).cross(c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

bool polygon_is_simple(std::span<const Vec2> verts) {
  const std::size_t n = verts.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if ((verts[(i + 1) % n] - verts[i]).squared_norm() == 0.0) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip edges sharing a vertex (adjacent, or the closing pair 0 / n-1)
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(verts[i], verts[(i + 1) % n], verts[j], verts[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

PolygonGeometry PolygonGeometry::from_vertices(std::vector<Vec2> verts) {
  if (verts.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  for (const Vec2& v : verts) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw std::invalid_argument("polygon vertex is not finite");
  }
  if (!polygon_is_simple(verts)) throw std::invalid_argument("polygon is not simple");
  const double signed_area = polygon_signed_area(verts);
  if (signed_area <= 0.0)
    throw std::invalid_argument("polygon vertices must be in counterclockwise order");

  PolygonGeometry g;
  g.vertices = std::move(verts);
  g.area = signed_area;
  g.centroid = polygon_centroid(g.vertices);
  g.diameter = polygon_diameter(g.vertices);
  const std::size_t n = g.vertices.size();
  g.edge_lengths.resize(n);
  g.edge_normals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 t = g.vertices[(i + 1) % n] - g.vertices[i];
    const double len = t.norm();
    if (len == 0.0) throw std::invalid_argument("polygon has a zero-length edge");
    g.edge_lengths[i] = len;
    // rotate the CCW tangent by -90 degrees to point outward
    g.edge_normals[i] = Vec2{t.y / len, -t.x / len};
  }
  return g;
}

double polygon_kernel_radius(const PolygonGeometry& poly) {
  // Chebyshev-center LP in the three unknowns (x, y, r): maximize r subject
  // to n_e . (x,y) + r <= n_e . p_e for every edge half-plane. The polygon is
  // bounded, so an optimal basic solution has three active constraints;
  // enumerate constraint triples and keep the best feasible candidate.
  const std::size_t n = poly.num_vertices();
  const double feas_tol = 1e-12 * std::max(1.0, poly.diameter);
  std::vector<double> rhs(n);
  for (std::size_t e = 0; e < n; ++e) rhs[e] = poly.edge_normals[e].dot(poly.vertices[e]);

  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        // solve [n_i 1; n_j 1; n_k 1] (x y r)^T = (rhs_i rhs_j rhs_k)^T
        const Vec2 ni = poly.edge_normals[i], nj = poly.edge_normals[j],
                   nk = poly.edge_normals[k];
        const double det = ni.x * (nj.y - nk.y) - ni.y * (nj.x - nk.x) +
                           (nj.x * nk.y - nj.y * nk.x);
        if (std::abs(det) < 1e-14) continue;
        const double bi = rhs[i], bj = rhs[j], bk = rhs[k];
        const double x = (bi * (nj.y - nk.y) - ni.y * (bj - bk) + (bj * nk.y - nj.y * bk)) / det;
        const double y = (ni.x * (bj - bk) - bi * (nj.x - nk.x) + (nj.x * bk - bj * nk.x)) / det;
        const double r = (ni.x * (nj.y * bk - bj * nk.y) - ni.y * (nj.x * bk - bj * nk.x) +
                          bi * (nj.x * nk.y - nj.y * nk.x)) / det;
        if (r <= best) continue;
        bool feasible = true;
        for (std::size_t e = 0; e < n && feasible; ++e)
          feasible = poly.edge_normals[e].x * x + poly.edge_normals[e].y * y + r <=
                     rhs[e] + feas_tol;
        if (feasible) best = r;
      }
    }
  }
  return best;
}

}  // namespace fhnvem
