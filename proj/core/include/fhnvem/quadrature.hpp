#pragma once

#include <vector>

#include "fhnvem/geometry.hpp"

namespace fhnvem {

// Quadrature nodes and weights over one polygon. Weights sum to the polygon
// area and may be negative on non-convex polygons (signed fan triangles).
struct QuadRule {
  std::vector<Vec2> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

// Rule exact for bivariate polynomials up to total degree 4: the polygon is
// fanned into triangles (centroid, v_i, v_{i+1}) with signed areas, and each
// triangle carries a 6-point degree-4 rule. Signed areas make the fan valid
// for any simple polygon, star-shaped or not.
QuadRule polygon_quadrature(const PolygonGeometry& poly);

// Integral of f over the polygon with the degree-4 rule; exact when f is a
// polynomial of total degree <= 4.
template <class F>
double integrate_over_polygon(const PolygonGeometry& poly, F&& f) {
  const QuadRule rule = polygon_quadrature(poly);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) sum += rule.weights[q] * f(rule.points[q]);
  return sum;
}

}  // namespace fhnvem
