// Acceptance suite: one self-contained check per criterion, each printing a
// single [PASS]/[FAIL] line with its measured quantities and runtime budget.
// Run with no arguments for all criteria, or pass criterion numbers.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fhnvem/assembly.hpp"
#include "fhnvem/config.hpp"
#include "fhnvem/driver.hpp"
#include "fhnvem/experiments.hpp"
#include "fhnvem/mesh.hpp"
#include "fhnvem/timestepper.hpp"
#include "fhnvem/vem_local.hpp"
#include "support/oracles.hpp"

using namespace fhnvem;

namespace {

struct CriterionResult {
  bool pass = false;
  std::string detail;
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Patch test: on 200 polygons pooled from all three mesh families, the
//    local forms are exact on linear polynomials. Stiffness rows are compared
//    against the analytic boundary representation of the gradient pairing
//    (hat traces are edgewise linear, so each edge contributes half its
//    length), the mass pairing against boundary-moment integrals.
CriterionResult criterion1() {
  std::vector<PolygonGeometry> pool;
  auto harvest = [&pool](const PolygonalMesh& mesh) {
    for (int c = 0; c < mesh.num_cells() && pool.size() < 200; ++c)
      pool.push_back(mesh.cell_geometry(c));
  };
  harvest(generate_square_mesh(5));
  harvest(generate_distorted_quad_mesh(7, 0.25, 101));
  harvest(generate_distorted_quad_mesh(7, 0.15, 202));
  harvest(generate_voronoi_mesh(49, 2, 303));
  harvest(generate_voronoi_mesh(36, 3, 404));
  if (pool.size() < 200) harvest(generate_voronoi_mesh(25, 1, 505));

  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  double max_stiffness_defect = 0.0;
  double max_mass_defect = 0.0;

  for (const PolygonGeometry& poly : pool) {
    const ElementOperators ops = build_element_operators(poly);
    const int n = ops.num_dofs();
    for (int rep = 0; rep < 3; ++rep) {
      const Eigen::Vector3d p{ud(rng), ud(rng), ud(rng)};
      const Eigen::Vector3d q{ud(rng), ud(rng), ud(rng)};
      Eigen::VectorXd pd(n), qd(n);
      for (int i = 0; i < n; ++i) {
        pd[i] = p[0] + p[1] * poly.vertices[i].x + p[2] * poly.vertices[i].y;
        qd[i] = q[0] + q[1] * poly.vertices[i].x + q[2] * poly.vertices[i].y;
      }

      // stiffness against every basis vector at once: entry i of K * pd must
      // equal the boundary integral of (grad p . n) phi_i over the two edges
      // meeting vertex i
      const Eigen::VectorXd got = ops.stiffness * pd;
      Eigen::VectorXd want = Eigen::VectorXd::Zero(n);
      for (int e = 0; e < n; ++e) {
        const double flux = p[1] * poly.edge_normals[e].x + p[2] * poly.edge_normals[e].y;
        const double half = 0.5 * poly.edge_lengths[e] * flux;
        want[e] += half;
        want[(e + 1) % n] += half;
      }
      const double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
      max_stiffness_defect =
          std::max(max_stiffness_defect, (got - want).cwiseAbs().maxCoeff() / scale);

      const double mass_got = pd.dot(ops.mass * qd);
      const double mass_want = oracle::affine_product_integral(poly.vertices, p, q);
      const double mass_scale = std::max(1.0, std::abs(mass_want));
      max_mass_defect =
          std::max(max_mass_defect, std::abs(mass_got - mass_want) / mass_scale);
    }
  }

  CriterionResult r;
  r.pass = pool.size() == 200 && max_stiffness_defect <= 1e-11 && max_mass_defect <= 1e-11;
  r.detail = "patch test on " + std::to_string(pool.size()) +
             " polygons from three families: stiffness defect " + fmt(max_stiffness_defect) +
             ", mass defect " + fmt(max_mass_defect) + " (tol 1e-11)";
  return r;
}

// ---------------------------------------------------------------------------
// 2. Projector identity at lowest order: the energy and L2 projector
//    coefficient matrices coincide entrywise on every cell of a 1/32 Voronoi
//    mesh.
CriterionResult criterion2() {
  MeshFamilyParams params;
  const PolygonalMesh mesh = make_family_mesh(MeshFamily::Voronoi, 32, params);
  double worst = 0.0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const ElementOperators ops = build_element_operators(mesh.cell_geometry(c));
    worst = std::max(worst, (ops.energy_coeffs - ops.l2_coeffs).cwiseAbs().maxCoeff());
  }
  CriterionResult r;
  r.pass = worst <= 1e-12;
  r.detail = "projector coincidence over " + std::to_string(mesh.num_cells()) +
             " Voronoi cells: max entry difference " + fmt(worst) + " (tol 1e-12)";
  return r;
}

// ---------------------------------------------------------------------------
// 3. L2-projection approximation rate: project the vertex interpolant of
//    sin(pi x) sin(pi y) cellwise and measure the L2 distance to the smooth
//    field; the observed order over h in {1/8,...,1/64} must be second.
CriterionResult criterion3() {
  const auto u = [](const Vec2& p) {
    return std::sin(std::numbers::pi * p.x) * std::sin(std::numbers::pi * p.y);
  };
  std::vector<double> log_h, log_e;
  std::string table;
  for (int level : {8, 16, 32, 64}) {
    const PolygonalMesh mesh = generate_square_mesh(level);
    double err2 = 0.0;
    for (int c = 0; c < mesh.num_cells(); ++c) {
      const ElementOperators ops = build_element_operators(mesh.cell_geometry(c));
      Eigen::VectorXd dofs(ops.num_dofs());
      for (int i = 0; i < ops.num_dofs(); ++i) dofs[i] = u(ops.geometry.vertices[i]);
      const Eigen::Vector3d coeffs = project_local(ops, dofs);
      for (std::size_t q = 0; q < ops.quad.size(); ++q) {
        const double diff =
            coeffs.dot(ops.quad_monomials.row(q).transpose()) - u(ops.quad.points[q]);
        err2 += ops.quad.weights[q] * diff * diff;
      }
    }
    const double err = std::sqrt(err2);
    log_h.push_back(std::log(mesh.h));
    log_e.push_back(std::log(err));
    table += " 1/" + std::to_string(level) + ": " + fmt(err);
  }
  const double order = least_squares_slope(log_h, log_e);
  CriterionResult r;
  r.pass = order >= 1.9 && order <= 2.1;
  r.detail = "projection errors" + table + "; observed order " + fmt(order) +
             " (required [1.9, 2.1])";
  return r;
}

// ---------------------------------------------------------------------------
// 4. 0-D reduction: with constant data the PDE solver must track an
//    independently coded scalar backward-Euler/Picard recursion to 1e-9 in
//    both fields at every one of 100 steps.
CriterionResult criterion4() {
  const PolygonalMesh mesh = generate_square_mesh(4);
  const GlobalOperators ops = assemble_global(mesh);
  ModelSpec model;
  model.kinetics = example1_model().kinetics;
  model.stimulus.enabled = false;
  model.initial.preset = InitialPreset::Constant;
  model.initial.v_const = 0.3;
  model.initial.w_const = 0.1;

  const TimeGrid grid{1.0, 100};
  PicardConfig picard;
  picard.tol = 1e-10;
  LinearSolverConfig linear;
  linear.tol = 1e-12;

  const auto trace = oracle::scalar_reference_trace(model.kinetics, 0.3, 0.1, grid.t_end,
                                                    grid.num_steps, picard.tol,
                                                    picard.max_iters, picard.damping);

  double worst = 0.0;
  const RunResult result = run_simulation(
      ops, model, initial_state(mesh, model), grid, picard, linear,
      [&](int step, const FieldState& state) {
        const double dv = (state.v.array() - trace.v[step]).abs().maxCoeff();
        const double dw = (state.w.array() - trace.w[step]).abs().maxCoeff();
        worst = std::max(worst, std::max(dv, dw));
      });
  (void)result;

  CriterionResult r;
  r.pass = worst <= 1e-9;
  r.detail = "constant-data run vs scalar integrator over 100 steps: max deviation " +
             fmt(worst) + " (tol 1e-9)";
  return r;
}

// ---------------------------------------------------------------------------
// 5. Spatial convergence: coarse meshes 1/8, 1/16, 1/32 at dt = 1/800 against
//    a 1/128 reference; the terminal-time excitation error must shrink with
//    order in [1.8, 2.3].
CriterionResult criterion5() {
  ConvergenceOptions options;
  options.model = example1_model();
  options.family = MeshFamily::Squares;
  options.space_levels = {8, 16, 32};
  options.time_steps = {800};
  options.reference_space_level = 128;
  options.reference_time_steps = 800;
  options.t_end = 1.0;

  const ConvergenceStudy study = run_convergence(options);
  std::string table;
  for (int i = 0; i < study.error_v.rows(); ++i)
    table += " 1/" + std::to_string(study.space_levels[i]) + ": " +
             fmt(study.error_v(i, 0));

  CriterionResult r;
  r.pass = study.spatial_order_v >= 1.8 && study.spatial_order_v <= 2.3;
  r.detail = "terminal errors" + table + "; observed spatial order " +
             fmt(study.spatial_order_v) +
             " (required [1.8, 2.3]); external reference values, reported for "
             "comparison only because their mesh family is not reproducible "
             "here, not asserted: 0.039090164250364 at (1/8, dt=1/10), "
             "0.001528339183782 at (1/64, dt=1/80)";
  return r;
}

// ---------------------------------------------------------------------------
// 6. Temporal convergence on a fixed 1/64 mesh: dt in {1/10,...,1/80} against
//    a dt = 1/800 reference on the same mesh; first order in time, and the
//    fine-step error floor stays shallow (error ratio 1/40 : 1/80 below 3).
CriterionResult criterion6() {
  const PolygonalMesh mesh = generate_square_mesh(64);
  const GlobalOperators ops = assemble_global(mesh);
  const ModelSpec model = example1_model();
  const PicardConfig picard;
  const LinearSolverConfig linear;
  const FieldState initial = initial_state(mesh, model);

  auto terminal_v = [&](int steps) {
    const TimeGrid grid{1.0, steps};
    return run_simulation(ops, model, initial, grid, picard, linear).final_state.v;
  };

  const Eigen::VectorXd ref = terminal_v(800);
  std::vector<double> log_dt, log_e, errors;
  std::string table;
  for (int steps : {10, 20, 40, 80}) {
    const double err = discrete_relative_error(terminal_v(steps), ref, ops.mass);
    errors.push_back(err);
    log_dt.push_back(std::log(1.0 / steps));
    log_e.push_back(std::log(err));
    table += " 1/" + std::to_string(steps) + ": " + fmt(err);
  }
  const double order = least_squares_slope(log_dt, log_e);
  const double floor_ratio = errors[2] / errors[3];

  CriterionResult r;
  r.pass = order >= 0.7 && order <= 1.3 && floor_ratio < 3.0;
  r.detail = "temporal errors" + table + "; observed order " + fmt(order) +
             " (required [0.7, 1.3]); error ratio dt=1/40 : 1/80 = " + fmt(floor_ratio) +
             " (required < 3)";
  return r;
}

// ---------------------------------------------------------------------------
// 7. Energy bound proxy: the maximal discrete mass-norm of the state pair is
//    mesh-independent to 10% between 1/16 and 1/32, and no step needs more
//    than 50 fixed-point sweeps.
CriterionResult criterion7() {
  const ModelSpec model = example1_model();
  const PicardConfig picard;
  const LinearSolverConfig linear;

  auto run_level = [&](int level) {
    const PolygonalMesh mesh = generate_square_mesh(level);
    const GlobalOperators ops = assemble_global(mesh);
    const TimeGrid grid{1.0, 80};
    const RunResult result =
        run_simulation(ops, model, initial_state(mesh, model), grid, picard, linear);
    double peak = 0.0;
    for (const EnergySample& s : result.energy_log)
      peak = std::max(peak, s.v_mass_norm + s.w_mass_norm);
    return std::pair<double, int>{peak, result.max_picard_iterations};
  };

  const auto [peak16, picard16] = run_level(16);
  const auto [peak32, picard32] = run_level(32);
  const double rel_diff = std::abs(peak16 - peak32) / std::max(peak16, peak32);
  const int max_picard = std::max(picard16, picard32);

  CriterionResult r;
  r.pass = rel_diff < 0.10 && max_picard <= 50;
  r.detail = "peak state norm 1/16: " + fmt(peak16) + ", 1/32: " + fmt(peak32) +
             ", relative difference " + fmt(rel_diff) + " (required < 0.1); max sweeps " +
             std::to_string(max_picard) + " (required <= 50)";
  return r;
}

// ---------------------------------------------------------------------------
// 8. Spiral-wave property: the quadrant-data run on the 1/32 Voronoi mesh
//    stays within physical bounds for 12 time units and keeps a live spatial
//    pattern at t = 10, while a constant-data control stays spatially flat.
CriterionResult criterion8() {
  SnapshotOptions options = example3_options();
  options.t_end = 12.0;
  options.num_steps = 1200;
  options.snapshot_times = {0.1, 1.0, 1.5, 2.0, 10.0, 12.0};

  const SnapshotRun run = run_snapshot_experiment(options);
  double min_v = std::numeric_limits<double>::infinity();
  double max_v = -min_v;
  double std_at_10 = -1.0;
  for (const SnapshotStats& s : run.stats) {
    min_v = std::min(min_v, s.min_v);
    max_v = std::max(max_v, s.max_v);
    if (std::abs(s.t - 10.0) < 1e-9) std_at_10 = s.std_v;
  }

  SnapshotOptions control = options;
  control.model.initial.preset = InitialPreset::Constant;
  control.model.initial.v_const = 0.3;
  control.model.initial.w_const = 0.1;
  const SnapshotRun flat = run_snapshot_experiment(control);
  double control_std = 0.0;
  for (const SnapshotStats& s : flat.stats) control_std = std::max(control_std, s.std_v);

  CriterionResult r;
  r.pass = min_v >= -0.6 && max_v <= 2.0 && std_at_10 > 0.01 && control_std < 1e-9;
  r.detail = "v range over snapshots [" + fmt(min_v) + ", " + fmt(max_v) +
             "] (required within [-0.6, 2]); spatial std at t=10: " + fmt(std_at_10) +
             " (required > 0.01); control-run max std " + fmt(control_std) +
             " (required < 1e-9)";
  return r;
}

// ---------------------------------------------------------------------------
// 9. Determinism: two serial executions of the criterion-4 job (constant
//    preset through the full driver) write bitwise-identical CSV and VTK
//    artifacts.
CriterionResult criterion9() {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "fhnvem_acceptance9";
  fs::remove_all(base);

  auto configure = [&](const std::string& sub) {
    RunConfig config = preset_config("constant");
    apply_override(config, "time.t_end", "1");
    apply_override(config, "time.steps", "100");
    apply_override(config, "linsolve.tol", "1e-12");
    apply_override(config, "output.dir", (base / sub).string());
    apply_override(config, "output.stride", "25");
    validate_config(config);
    return config;
  };

  (void)run_job(configure("a"));
  (void)run_job(configure("b"));

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };

  int compared = 0;
  int mismatched = 0;
  std::string first_mismatch;
  for (const auto& entry : fs::directory_iterator(base / "a")) {
    const fs::path name = entry.path().filename();
    if (name == "manifest.txt") continue;  // records the differing output.dir
    ++compared;
    if (slurp(entry.path()) != slurp(base / "b" / name)) {
      ++mismatched;
      if (first_mismatch.empty()) first_mismatch = name.string();
    }
  }
  fs::remove_all(base);

  CriterionResult r;
  r.pass = compared >= 7 && mismatched == 0;
  r.detail = "compared " + std::to_string(compared) +
             " CSV/VTK artifacts from two serial runs: " +
             (mismatched == 0 ? std::string("all bitwise identical")
                              : std::to_string(mismatched) + " differ, first: " + first_mismatch);
  return r;
}

struct Criterion {
  int id;
  double time_limit_seconds;
  std::function<CriterionResult()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, 10.0, criterion1},   {2, 5.0, criterion2},   {3, 30.0, criterion3},
      {4, 30.0, criterion4},   {5, 900.0, criterion5}, {6, 900.0, criterion6},
      {7, 600.0, criterion7},  {8, 1200.0, criterion8}, {9, 30.0, criterion9},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    const double t0 = now_seconds();
    CriterionResult result;
    try {
      result = c.run();
    } catch (const std::exception& err) {
      result.pass = false;
      result.detail = std::string("exception: ") + err.what();
    }
    const double elapsed = now_seconds() - t0;
    const bool in_budget = elapsed < c.time_limit_seconds;
    const bool pass = result.pass && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s (%.1fs of %.0fs budget)\n", pass ? "PASS" : "FAIL",
                c.id, result.detail.c_str(), elapsed, c.time_limit_seconds);
    std::fflush(stdout);
  }
  return failures;
}
