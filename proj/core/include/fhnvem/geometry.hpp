#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace fhnvem {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  // z-component of the cross product, used for orientation tests
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double squared_norm() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }

// Axis-aligned rectangular domain [x0,x1] x [y0,y1].
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double diagonal() const { return std::hypot(width(), height()); }
  bool contains(const Vec2& p, double tol = 0.0) const {
    return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
  }
  bool on_boundary(const Vec2& p, double tol = 0.0) const {
    return contains(p, tol) && (std::abs(p.x - x0) <= tol || std::abs(p.x - x1) <= tol ||
                                std::abs(p.y - y0) <= tol || std::abs(p.y - y1) <= tol);
  }
};

// Shoelace area, positive for counterclockwise vertex order.
double polygon_signed_area(std::span<const Vec2> verts);
Vec2 polygon_centroid(std::span<const Vec2> verts);
// Largest pairwise vertex distance.
double polygon_diameter(std::span<const Vec2> verts);
// True if no two non-adjacent edges intersect and no edge degenerates.
bool polygon_is_simple(std::span<const Vec2> verts);

// Geometry of one polygonal element: counterclockwise vertex loop plus the
// derived quantities every element-level computation needs.
struct PolygonGeometry {
  std::vector<Vec2> vertices;        // CCW
  double area = 0.0;                 // positive
  Vec2 centroid;
  double diameter = 0.0;             // element size h_K
  std::vector<double> edge_lengths;  // edge i connects vertex i to i+1 (mod n)
  std::vector<Vec2> edge_normals;    // unit outward normals

  std::size_t num_vertices() const { return vertices.size(); }

  // Validates (>= 3 vertices, simple, CCW, positive area) and fills the
  // derived fields. Throws std::invalid_argument on a degenerate input.
  static PolygonGeometry from_vertices(std::vector<Vec2> verts);
};

// Largest inscribed-ball radius about which the polygon is star-shaped, found
// as the Chebyshev center of the edge half-planes: maximize r subject to
// n_e . x + r <= n_e . p_e over all edges. Returns the optimal radius, which
// is positive for convex polygons and may be <= 0 when the kernel is empty.
double polygon_kernel_radius(const PolygonGeometry& poly);

}  // namespace fhnvem
