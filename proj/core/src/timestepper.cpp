#include "fhnvem/timestepper.hpp"

#include <cmath>

namespace fhnvem {

namespace {

double relative_sup_increment(const Eigen::VectorXd& next, const Eigen::VectorXd& prev) {
  const double inc = (next - prev).lpNorm<Eigen::Infinity>();
  return inc / std::max(1.0, next.lpNorm<Eigen::Infinity>());
}

}  // namespace

FieldState advance(const GlobalOperators& ops, const ModelSpec& model, const FieldState& prev,
                   double dt, const PicardConfig& picard, const LinearSolverConfig& linear,
                   StepStats* stats) {
  if (!(dt > 0.0)) throw std::invalid_argument("advance: dt must be positive");
  const double t_new = prev.t + dt;
  const double inv_dt = 1.0 / dt;

  const Eigen::VectorXd mass_v_prev = ops.mass * prev.v;
  const Eigen::VectorXd mass_w_prev = ops.mass * prev.w;
  const Eigen::VectorXd applied = assemble_applied_current(ops, model.stimulus, t_new);
  const Eigen::VectorXd mass_diag = ops.mass.diagonal();
  const Eigen::VectorXd stiffness_diag = ops.stiffness.diagonal();

  Eigen::VectorXd v = prev.v;  // warm start from the previous time level
  Eigen::VectorXd w = prev.w;
  std::vector<double> increments;
  int cg_v = 0, cg_w = 0;

  for (int sweep = 1; sweep <= picard.max_iters; ++sweep) {
    const double total = nonlocal_total(ops, v);
    const double diffusion = model.diffusion(total);

    const Eigen::VectorXd rhs_v =
        inv_dt * mass_v_prev + applied - assemble_ionic_vector(ops, v, w, model.kinetics);
    auto [v_solved, v_stats] = pcg(
        [&](const Eigen::VectorXd& p) -> Eigen::VectorXd {
          return inv_dt * (ops.mass * p) + diffusion * (ops.stiffness * p);
        },
        rhs_v, inv_dt * mass_diag + diffusion * stiffness_diag, linear.tol, linear.max_iters);
    cg_v += v_stats.iterations;
    const Eigen::VectorXd v_next =
        picard.damping == 1.0 ? std::move(v_solved)
                              : (picard.damping * v_solved + (1.0 - picard.damping) * v).eval();

    const Eigen::VectorXd rhs_w =
        mass_w_prev + dt * assemble_gating_vector(ops, v_next, w, model.kinetics);
    auto [w_next, w_stats] = pcg(
        [&](const Eigen::VectorXd& p) -> Eigen::VectorXd { return ops.mass * p; }, rhs_w,
        mass_diag, linear.tol, linear.max_iters);
    cg_w += w_stats.iterations;

    const double increment =
        std::max(relative_sup_increment(v_next, v), relative_sup_increment(w_next, w));
    increments.push_back(increment);
    v = v_next;
    w = w_next;

    if (increment <= picard.tol) {
      if (stats) {
        stats->picard_iterations = sweep;
        stats->nonlocal_total = nonlocal_total(ops, v);
        stats->diffusion_value = model.diffusion(stats->nonlocal_total);
        stats->cg_iterations_v = cg_v;
        stats->cg_iterations_w = cg_w;
        stats->increment_history = std::move(increments);
      }
      return {std::move(v), std::move(w), t_new};
    }
  }
  throw StepFailure("advance: fixed-point iteration did not reach tol " +
                        std::to_string(picard.tol) + " within " +
                        std::to_string(picard.max_iters) + " sweeps at t = " +
                        std::to_string(t_new),
                    FieldState{std::move(v), std::move(w), t_new}, std::move(increments));
}

RunResult run_simulation(const GlobalOperators& ops, const ModelSpec& model, FieldState initial,
                         const TimeGrid& grid, const PicardConfig& picard,
                         const LinearSolverConfig& linear, const StepCallback& on_step) {
  if (grid.num_steps < 1) throw std::invalid_argument("run_simulation: num_steps must be >= 1");
  RunResult result;
  result.energy_log.reserve(grid.num_steps + 1);

  FieldState state = std::move(initial);
  state.t = 0.0;
  double energy_accum = 0.0;

  auto record = [&](int step, int picard_iters, double total, double diffusion) {
    EnergySample sample;
    sample.step = step;
    sample.t = grid.time(step);
    sample.v_mass_norm = std::sqrt(state.v.dot(ops.mass * state.v));
    sample.w_mass_norm = std::sqrt(state.w.dot(ops.mass * state.w));
    sample.energy_accumulated = energy_accum;
    sample.nonlocal_total = total;
    sample.diffusion_value = diffusion;
    sample.picard_iterations = picard_iters;
    result.energy_log.push_back(sample);
  };

  const double total0 = nonlocal_total(ops, state.v);
  record(0, 0, total0, model.diffusion(total0));
  if (on_step) on_step(0, state);

  for (int n = 1; n <= grid.num_steps; ++n) {
    StepStats stats;
    state = advance(ops, model, state, grid.dt(), picard, linear, &stats);
    state.t = grid.time(n);  // keep t on the uniform grid exactly
    energy_accum += grid.dt() * state.v.dot(ops.stiffness * state.v);
    record(n, stats.picard_iterations, stats.nonlocal_total, stats.diffusion_value);
    result.max_picard_iterations = std::max(result.max_picard_iterations, stats.picard_iterations);
    if (on_step) on_step(n, state);
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace fhnvem
