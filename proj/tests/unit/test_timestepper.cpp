#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fhnvem/assembly.hpp"
#include "fhnvem/mesh.hpp"
#include "fhnvem/timestepper.hpp"
#include "support/oracles.hpp"

using namespace fhnvem;

namespace {

ModelSpec constant_model(double v0, double w0, const IonicKinetics& kinetics) {
  ModelSpec model;
  model.kinetics = kinetics;
  model.stimulus.enabled = false;
  model.initial.preset = InitialPreset::Constant;
  model.initial.v_const = v0;
  model.initial.w_const = w0;
  return model;
}

FieldState constant_state(int n, double v0, double w0) {
  FieldState state;
  state.v = Eigen::VectorXd::Constant(n, v0);
  state.w = Eigen::VectorXd::Constant(n, w0);
  state.t = 0.0;
  return state;
}

}  // namespace

TEST_CASE("spatially constant dynamics reduce to the scalar recursion") {
  const PolygonalMesh mesh = generate_square_mesh(4);
  const GlobalOperators ops = assemble_global(mesh);
  const IonicKinetics kinetics{0.2232, 0.9, -1.0, 0.004};
  const ModelSpec model = constant_model(0.3, 0.1, kinetics);

  const TimeGrid grid{1.0, 20};
  PicardConfig picard;
  picard.tol = 1e-10;
  LinearSolverConfig linear;
  linear.tol = 1e-12;

  const auto oracle_trace = oracle::scalar_reference_trace(kinetics, 0.3, 0.1, grid.t_end,
                                                           grid.num_steps, picard.tol,
                                                           picard.max_iters, picard.damping);

  std::vector<FieldState> states;
  const RunResult result =
      run_simulation(ops, model, constant_state(ops.num_dofs(), 0.3, 0.1), grid, picard,
                     linear, [&](int, const FieldState& s) { states.push_back(s); });

  REQUIRE(states.size() == static_cast<std::size_t>(grid.num_steps) + 1);
  for (int n = 0; n <= grid.num_steps; ++n) {
    // the field stays spatially constant
    const double spread = states[n].v.maxCoeff() - states[n].v.minCoeff();
    CHECK(spread <= 1e-11);
    CHECK(std::abs(states[n].v[0] - oracle_trace.v[n]) <= 1e-9);
    CHECK(std::abs(states[n].w[0] - oracle_trace.w[n]) <= 1e-9);
  }
  CHECK(result.final_state.t == doctest::Approx(1.0));
  CHECK(result.max_picard_iterations <= picard.max_iters);
}

TEST_CASE("damped iterations converge to the same fixed point as undamped ones") {
  const PolygonalMesh mesh = generate_square_mesh(3);
  const GlobalOperators ops = assemble_global(mesh);
  const IonicKinetics kinetics{0.2232, 0.9, -1.0, 0.004};
  const ModelSpec model = constant_model(0.3, 0.1, kinetics);
  const TimeGrid grid{0.5, 10};
  LinearSolverConfig linear;
  linear.tol = 1e-13;

  PicardConfig undamped;
  undamped.tol = 1e-12;
  PicardConfig damped;
  damped.tol = 1e-12;
  damped.damping = 0.5;

  const RunResult a = run_simulation(ops, model, constant_state(ops.num_dofs(), 0.3, 0.1),
                                     grid, undamped, linear);
  const RunResult b = run_simulation(ops, model, constant_state(ops.num_dofs(), 0.3, 0.1),
                                     grid, damped, linear);
  CHECK(std::abs(a.final_state.v[0] - b.final_state.v[0]) <= 1e-9);
  CHECK(std::abs(a.final_state.w[0] - b.final_state.w[0]) <= 1e-9);

  // the damped run also matches its own scalar oracle
  const auto trace = oracle::scalar_reference_trace(kinetics, 0.3, 0.1, grid.t_end,
                                                    grid.num_steps, damped.tol,
                                                    damped.max_iters, damped.damping);
  CHECK(std::abs(b.final_state.v[0] - trace.v.back()) <= 1e-9);
}

TEST_CASE("a stimulus that has not fired yet leaves the trajectory bitwise unchanged") {
  const PolygonalMesh mesh = generate_square_mesh(4);
  const GlobalOperators ops = assemble_global(mesh);

  ModelSpec quiet = constant_model(0.2, 0.05, IonicKinetics{0.2232, 0.9, -1.0, 0.004});
  ModelSpec armed = quiet;
  armed.stimulus.enabled = true;
  armed.stimulus.amplitude = 1.0;
  armed.stimulus.center = {0.5, 0.5};
  armed.stimulus.radius = 0.2;
  armed.stimulus.t_on = 4.0;  // far beyond this run's horizon

  const TimeGrid grid{1.0, 10};
  const PicardConfig picard;
  const LinearSolverConfig linear;

  const RunResult a =
      run_simulation(ops, quiet, constant_state(ops.num_dofs(), 0.2, 0.05), grid, picard, linear);
  const RunResult b =
      run_simulation(ops, armed, constant_state(ops.num_dofs(), 0.2, 0.05), grid, picard, linear);
  for (int i = 0; i < ops.num_dofs(); ++i) {
    CHECK(a.final_state.v[i] == b.final_state.v[i]);
    CHECK(a.final_state.w[i] == b.final_state.w[i]);
  }
}

TEST_CASE("an expanding fixed-point map fails loudly with diagnostics") {
  const PolygonalMesh mesh = generate_square_mesh(2);
  const GlobalOperators ops = assemble_global(mesh);
  const ModelSpec model = constant_model(0.3, 0.0, IonicKinetics{0.16875, 1.0, -100.0, 0.25});

  PicardConfig picard;
  picard.tol = 1e-16;     // unreachable
  picard.max_iters = 4;   // undamped with dt = 0.05 the fixed-point map expands mildly
  const LinearSolverConfig linear;

  const FieldState initial = constant_state(ops.num_dofs(), 0.3, 0.0);
  try {
    (void)advance(ops, model, initial, 0.05, picard, linear);
    FAIL("expected StepFailure");
  } catch (const StepFailure& failure) {
    CHECK(failure.increments.size() == 4);
    CHECK(failure.last.v.size() == ops.num_dofs());
    CHECK(std::string(failure.what()).find("fixed-point") != std::string::npos);
  }
}

TEST_CASE("the per-step log starts at the initial state and tracks the nonlocal pair") {
  const PolygonalMesh mesh = generate_square_mesh(3);
  const GlobalOperators ops = assemble_global(mesh);
  const ModelSpec model = constant_model(0.3, 0.1, IonicKinetics{0.2232, 0.9, -1.0, 0.004});
  const TimeGrid grid{0.2, 4};
  const RunResult result = run_simulation(ops, model, constant_state(ops.num_dofs(), 0.3, 0.1),
                                          grid, PicardConfig{}, LinearSolverConfig{});

  REQUIRE(result.energy_log.size() == 5);
  CHECK(result.energy_log[0].step == 0);
  CHECK(result.energy_log[0].t == 0.0);
  CHECK(result.energy_log[0].picard_iterations == 0);
  // total of the constant 0.3 over the unit square
  CHECK(result.energy_log[0].nonlocal_total == doctest::Approx(0.3).epsilon(1e-10));
  // the diffusion coefficient reported for 0.01 * 0.3 = 0.003 > 1e-4 floor
  CHECK(result.energy_log[0].diffusion_value == doctest::Approx(0.003).epsilon(1e-9));
  for (int n = 1; n <= 4; ++n) {
    CHECK(result.energy_log[n].step == n);
    CHECK(result.energy_log[n].t == doctest::Approx(grid.time(n)));
    CHECK(result.energy_log[n].picard_iterations >= 1);
    // constants carry no gradient energy beyond assembly roundoff
    CHECK(result.energy_log[n].energy_accumulated <= 1e-12);
    CHECK(result.energy_log[n].v_mass_norm > 0.0);
  }
}

TEST_CASE("two runs of the same job produce bitwise identical trajectories") {
  const PolygonalMesh mesh = generate_voronoi_mesh(9, 2, 31);
  const GlobalOperators ops = assemble_global(mesh);
  ModelSpec model;
  model.kinetics = IonicKinetics{0.2232, 0.9, -1.0, 0.004};
  model.initial.preset = InitialPreset::Example1;
  const FieldState initial{interpolate_vertices(mesh, [&](const Vec2& p) { return model.initial.v0(p); }),
                           interpolate_vertices(mesh, [&](const Vec2& p) { return model.initial.w0(p); }),
                           0.0};
  const TimeGrid grid{0.25, 5};
  const RunResult a = run_simulation(ops, model, initial, grid, PicardConfig{}, LinearSolverConfig{});
  const RunResult b = run_simulation(ops, model, initial, grid, PicardConfig{}, LinearSolverConfig{});
  for (int i = 0; i < ops.num_dofs(); ++i) {
    CHECK(a.final_state.v[i] == b.final_state.v[i]);
    CHECK(a.final_state.w[i] == b.final_state.w[i]);
  }
  CHECK(a.max_picard_iterations == b.max_picard_iterations);
}
