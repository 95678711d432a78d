#include "fhnvem/quadrature.hpp"

namespace fhnvem {

namespace {

// Degree-4 6-point rule on the reference triangle in barycentric form: two
// orbits of three symmetric points.
struct TriOrbit {
  double weight;  // relative to triangle area
  double a, b;    // barycentric coordinates (a, b, 1-a-b) permuted
};

constexpr TriOrbit kOrbits[2] = {
    {0.223381589678011, 0.108103018168070, 0.445948490915965},
    {0.109951743655322, 0.816847572980459, 0.091576213509771},
};

}  // namespace

QuadRule polygon_quadrature(const PolygonGeometry& poly) {
  const std::size_t n = poly.num_vertices();
  QuadRule rule;
  rule.points.reserve(6 * n);
  rule.weights.reserve(6 * n);
  const Vec2 c = poly.centroid;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly.vertices[i];
    const Vec2& q = poly.vertices[(i + 1) % n];
    const double signed_area = 0.5 * (p - c).cross(q - c);
    for (const TriOrbit& orbit : kOrbits) {
      const double w = orbit.weight * signed_area;
      const double l[3] = {orbit.a, orbit.b, 1.0 - orbit.a - orbit.b};
      for (int perm = 0; perm < 3; ++perm) {
        const double la = l[perm], lb = l[(perm + 1) % 3], lc = l[(perm + 2) % 3];
        rule.points.push_back(la * c + lb * p + lc * q);
        rule.weights.push_back(w);
      }
    }
  }
  return rule;
}

}  // namespace fhnvem
