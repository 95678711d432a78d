#pragma once

#include <memory>
#include <vector>

#include "fhnvem/timestepper.hpp"

namespace fhnvem {

// Model setups for the standard experiments.
//
// 1: convergence study on the unit square, mild kinetics
//    (a=0.2232, b=0.9, lambda=-1, theta=0.004), oscillatory initial data.
// 2: wave propagation with stiff kinetics
//    (a=0.16875, b=1, lambda=-100, theta=0.25), sigmoid front initial data,
//    a disc stimulus at (0.5, 0.5), radius 0.2, switched on at t=4.
// 3: spiral re-entry with the same stiff kinetics, quadrant initial data,
//    no stimulus.
ModelSpec example1_model();
ModelSpec example2_model();
ModelSpec example3_model();

enum class MeshFamily { Squares, DistortedQuads, Voronoi };
MeshFamily mesh_family_from_string(const std::string& name);
std::string to_string(MeshFamily family);

// Parameters the non-square generators need beyond the resolution.
struct MeshFamilyParams {
  Rect domain;
  double amplitude = 0.2;     // distorted quads
  std::uint64_t seed = 42;    // distorted quads / random Voronoi seeds
  int lloyd_iterations = 3;   // Voronoi smoothing sweeps
};

// Nominal resolution level n maps to an n x n grid for the square families
// and to n^2 seeds for the Voronoi family (mean cell size ~ 1/n).
PolygonalMesh make_family_mesh(MeshFamily family, int level, const MeshFamilyParams& params);

// Nodal interpolation of the model initial data.
FieldState initial_state(const PolygonalMesh& mesh, const ModelSpec& model);

// Relative error sqrt((a-b)^T M (a-b) / (b^T M b)) in the discrete mass norm;
// b is the yardstick (interpolated reference).
double discrete_relative_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                               const Eigen::SparseMatrix<double>& mass);

// Least-squares slope of y against x (used on log-log data for observed
// convergence orders).
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

// Fine-mesh reference run, always on the structured square family so that
// point location and nodal interpolation onto coarser meshes stay trivial.
struct ReferenceSolution {
  PolygonalMesh mesh;
  int level = 0;  // cells per side
  FieldState terminal;
  std::vector<Eigen::MatrixXd> cell_coeffs;  // element projection coefficients

  // Evaluate the piecewise projection of a nodal field: nodal value when p
  // matches a reference vertex, otherwise the containing cell's linear
  // polynomial.
  double evaluate(const Eigen::VectorXd& field, const Vec2& p) const;
};

ReferenceSolution compute_reference(const ModelSpec& model, int level, int num_steps,
                                    double t_end, const PicardConfig& picard,
                                    const LinearSolverConfig& linear, const Rect& domain);

// Nodal interpolants of the reference terminal fields on a coarse mesh.
std::pair<Eigen::VectorXd, Eigen::VectorXd> interpolate_reference(
    const ReferenceSolution& reference, const PolygonalMesh& coarse);

struct ConvergenceOptions {
  ModelSpec model = example1_model();
  MeshFamily family = MeshFamily::Squares;
  MeshFamilyParams mesh_params;
  std::vector<int> space_levels{8, 16, 32, 64};  // h = 1/level nominal
  std::vector<int> time_steps{10, 20, 40, 80};   // dt = t_end / steps
  int reference_space_level = 128;
  int reference_time_steps = 800;
  double t_end = 1.0;
  PicardConfig picard;
  LinearSolverConfig linear;
};

struct ConvergenceStudy {
  std::vector<int> space_levels;
  std::vector<int> time_steps;
  double t_end = 1.0;
  std::vector<double> mesh_h;        // actual max element diameter per level
  Eigen::MatrixXd error_v, error_w;  // rows: space levels, cols: time steps
  // observed orders: spatial at the finest time resolution, temporal on the
  // finest mesh
  double spatial_order_v = 0.0, spatial_order_w = 0.0;
  double temporal_order_v = 0.0, temporal_order_w = 0.0;
  int max_picard_iterations = 0;
};

// Terminal-time errors of every (mesh, step count) pair against one fine
// reference, plus observed orders. This is the standard convergence
// experiment when run with the defaults.
ConvergenceStudy run_convergence(const ConvergenceOptions& options);

// A single simulation with snapshot collection (wave and spiral experiments).
struct SnapshotOptions {
  ModelSpec model;
  MeshFamily family = MeshFamily::Squares;
  MeshFamilyParams mesh_params;
  int level = 32;
  double t_end = 1.0;
  int num_steps = 100;
  std::vector<double> snapshot_times;
  PicardConfig picard;
  LinearSolverConfig linear;
};

struct SnapshotStats {
  int step = 0;
  double t = 0.0;
  double min_v = 0.0, max_v = 0.0, mean_v = 0.0, std_v = 0.0;  // over vertex values
};

struct SnapshotRun {
  std::shared_ptr<const PolygonalMesh> mesh;
  RunResult run;
  std::vector<std::pair<int, FieldState>> snapshots;  // (step, state), ordered
  std::vector<SnapshotStats> stats;                   // one per snapshot
};

SnapshotRun run_snapshot_experiment(const SnapshotOptions& options);

// Convenience wrappers with the standard setups at desk scale. The level /
// step counts can be overridden by the caller before running.
SnapshotOptions example2_options();  // square mesh 1/128, T=5, dt=1/100
SnapshotOptions example3_options();  // Voronoi mesh 1/32, T=15, dt=1/100

}  // namespace fhnvem
