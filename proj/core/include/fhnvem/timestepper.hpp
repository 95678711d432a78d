#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "fhnvem/assembly.hpp"
#include "fhnvem/linear_solver.hpp"

namespace fhnvem {

struct TimeGrid {
  double t_end = 1.0;
  int num_steps = 100;

  double dt() const { return t_end / num_steps; }
  double time(int step) const { return step * dt(); }
};

// Fixed-point (Picard) iteration controls for one implicit step. The
// nonlinearities are lagged: each sweep freezes the nonlocal diffusion
// coefficient and the ionic vector at the previous iterate, solves the
// excitation system, then updates the recovery field with the fresh
// excitation. `damping` relaxes the excitation update only (the recovery
// update is already a strong contraction); 1.0 means undamped. Convergence is
// declared when the larger of the two relative sup-norm increments,
// ||delta|| / max(1, ||iterate||), drops to tol.
struct PicardConfig {
  double tol = 1e-8;
  int max_iters = 50;
  double damping = 1.0;
};

struct LinearSolverConfig {
  double tol = 1e-10;
  int max_iters = 20000;
};

struct FieldState {
  Eigen::VectorXd v;  // excitation potential
  Eigen::VectorXd w;  // recovery
  double t = 0.0;
};

struct StepStats {
  int picard_iterations = 0;
  double nonlocal_total = 0.0;   // at the accepted iterate
  double diffusion_value = 0.0;  // coefficient at the accepted iterate
  int cg_iterations_v = 0;       // summed over the Picard sweeps
  int cg_iterations_w = 0;
  std::vector<double> increment_history;
};

// Raised when the Picard loop fails to reach tol; carries the last iterate
// and the increment history for post-mortems.
struct StepFailure : std::runtime_error {
  StepFailure(const std::string& what, FieldState last_, std::vector<double> increments_)
      : std::runtime_error(what), last(std::move(last_)), increments(std::move(increments_)) {}
  FieldState last;
  std::vector<double> increments;
};

// One backward step of length dt from `prev`. Each Picard sweep solves
//   ((1/dt) M + D(total(v_s)) A) v_{s+1} = (1/dt) M v_prev + I_app - ionic(v_s, w_s)
//   M w_{s+1} = M w_prev + dt * gating(v_{s+1}, w_s)
// with the applied current evaluated at the new time level. The diffusion
// operator is applied matrix-free as a scaled sum, so A is never rescaled.
FieldState advance(const GlobalOperators& ops, const ModelSpec& model, const FieldState& prev,
                   double dt, const PicardConfig& picard, const LinearSolverConfig& linear,
                   StepStats* stats = nullptr);

// Per-step scalars recorded along a run (step 0 holds the initial state).
struct EnergySample {
  int step = 0;
  double t = 0.0;
  double v_mass_norm = 0.0;       // sqrt(v^T M v)
  double w_mass_norm = 0.0;
  double energy_accumulated = 0.0;  // sum of dt * v^T A v up to this step
  double nonlocal_total = 0.0;
  double diffusion_value = 0.0;
  int picard_iterations = 0;
};

struct RunResult {
  FieldState final_state;
  std::vector<EnergySample> energy_log;
  int max_picard_iterations = 0;
};

// Called after every accepted step, and once with step 0 for the initial
// state.
using StepCallback = std::function<void(int step, const FieldState&)>;

RunResult run_simulation(const GlobalOperators& ops, const ModelSpec& model,
                         FieldState initial, const TimeGrid& grid, const PicardConfig& picard,
                         const LinearSolverConfig& linear, const StepCallback& on_step = {});

}  // namespace fhnvem
