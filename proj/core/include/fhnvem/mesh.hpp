#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fhnvem/geometry.hpp"

namespace fhnvem {

// Thrown when mesh construction or validation fails.
struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Cell {
  std::vector<int> vertex_ids;  // counterclockwise loop into PolygonalMesh::vertices
  double area = 0.0;
  Vec2 centroid;
  double diameter = 0.0;
};

// Conforming polygonal tessellation of an axis-aligned rectangle. Instances
// are produced by the generators / loader below, validated on construction,
// and treated as immutable afterwards; sharing a const reference across
// threads is safe.
struct PolygonalMesh {
  Rect domain;
  std::vector<Vec2> vertices;
  std::vector<Cell> cells;
  // undirected edges as (min_id, max_id), split by multiplicity in the cell
  // edge table: interior edges are shared by exactly two cells
  std::vector<std::pair<int, int>> interior_edges;
  std::vector<std::pair<int, int>> boundary_edges;
  double h = 0.0;  // max cell diameter

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_cells() const { return static_cast<int>(cells.size()); }
  std::size_t num_edges() const { return interior_edges.size() + boundary_edges.size(); }

  PolygonGeometry cell_geometry(int cell) const;
};

// Builds a mesh from raw vertex coordinates and per-cell CCW vertex loops,
// computing the cached cell quantities and checking every structural
// invariant: finite coordinates, simple CCW positive-area cells, each
// undirected edge used by at most two cells (with opposite orientations),
// boundary edges lying on the domain boundary, cell areas summing to the
// domain area (1e-10 relative), and Euler's formula V - E + F = 1.
PolygonalMesh build_mesh(Rect domain, std::vector<Vec2> vertices,
                         std::vector<std::vector<int>> cell_vertex_ids);

// n x n axis-aligned square cells.
PolygonalMesh generate_square_mesh(int n, Rect domain = {});

// Square grid whose interior vertices are displaced by a uniform random
// perturbation of magnitude <= amplitude * (side / n) in each coordinate.
// Boundary vertices stay fixed. If any cell comes out tangled the whole mesh
// is regenerated with the amplitude halved (same seed), at most five times.
PolygonalMesh generate_distorted_quad_mesh(int n, double amplitude, std::uint64_t seed,
                                           Rect domain = {});

// Centroidal Voronoi tessellation: n_seeds random seeds, the given number of
// Lloyd iterations, cells clipped to the domain. Deterministic per seed.
PolygonalMesh generate_voronoi_mesh(int n_seeds, int lloyd_iterations, std::uint64_t seed,
                                    Rect domain = {});

// Same pipeline but with caller-provided seed points.
PolygonalMesh generate_voronoi_mesh_from_seeds(std::vector<Vec2> seeds, int lloyd_iterations,
                                               Rect domain = {});

// Per-cell shape-regularity report: ratio of shortest edge to cell diameter
// and of the star-shapedness (kernel inscribed-ball) radius to cell diameter.
// A cell passes if both ratios are >= threshold.
struct MeshQualityReport {
  double threshold = 0.0;
  std::vector<double> edge_ratios;         // shortest edge / h_K per cell
  std::vector<double> star_radius_ratios;  // kernel ball radius / h_K per cell
  double min_edge_ratio = 0.0;
  double min_star_radius_ratio = 0.0;
  std::vector<int> failing_cells;
  bool pass = false;
};

MeshQualityReport check_mesh_assumptions(const PolygonalMesh& mesh, double threshold);

// Plain-text mesh serialization (format documented in the writer). Files
// round-trip exactly; the loader re-runs full mesh validation.
void save_mesh(const PolygonalMesh& mesh, const std::string& path);
PolygonalMesh load_mesh(const std::string& path);

// FNV-1a hash of the canonical text serialization, used in run manifests.
std::uint64_t mesh_content_hash(const PolygonalMesh& mesh);

}  // namespace fhnvem
