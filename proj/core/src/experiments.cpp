#include "fhnvem/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fhnvem {

ModelSpec example1_model() {
  ModelSpec model;
  model.kinetics = {0.2232, 0.9, -1.0, 0.004};
  model.diffusion = {0.01, 1e-4};
  model.stimulus.enabled = false;
  model.initial.preset = InitialPreset::Example1;
  return model;
}

ModelSpec example2_model() {
  ModelSpec model;
  model.kinetics = {0.16875, 1.0, -100.0, 0.25};
  model.diffusion = {0.01, 1e-4};
  model.stimulus = Stimulus{true, 1.0, {0.5, 0.5}, 0.2, 4.0,
                            std::numeric_limits<double>::infinity()};
  model.initial.preset = InitialPreset::Example2;
  return model;
}

ModelSpec example3_model() {
  ModelSpec model = example2_model();
  model.stimulus.enabled = false;
  model.initial.preset = InitialPreset::Example3;
  return model;
}

MeshFamily mesh_family_from_string(const std::string& name) {
  if (name == "squares") return MeshFamily::Squares;
  if (name == "distorted") return MeshFamily::DistortedQuads;
  if (name == "voronoi") return MeshFamily::Voronoi;
  throw std::invalid_argument("unknown mesh family '" + name +
                              "' (expected squares|distorted|voronoi)");
}

std::string to_string(MeshFamily family) {
  switch (family) {
    case MeshFamily::Squares: return "squares";
    case MeshFamily::DistortedQuads: return "distorted";
    case MeshFamily::Voronoi: return "voronoi";
  }
  return "squares";
}

PolygonalMesh make_family_mesh(MeshFamily family, int level, const MeshFamilyParams& params) {
  switch (family) {
    case MeshFamily::Squares:
      return generate_square_mesh(level, params.domain);
    case MeshFamily::DistortedQuads:
      return generate_distorted_quad_mesh(level, params.amplitude, params.seed, params.domain);
    case MeshFamily::Voronoi:
      return generate_voronoi_mesh(level * level, params.lloyd_iterations, params.seed,
                                   params.domain);
  }
  throw std::invalid_argument("make_family_mesh: bad family");
}

FieldState initial_state(const PolygonalMesh& mesh, const ModelSpec& model) {
  FieldState state;
  state.v = interpolate_vertices(mesh, [&](const Vec2& p) { return model.initial.v0(p); });
  state.w = interpolate_vertices(mesh, [&](const Vec2& p) { return model.initial.w0(p); });
  state.t = 0.0;
  return state;
}

double discrete_relative_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                               const Eigen::SparseMatrix<double>& mass) {
  if (a.size() != b.size() || a.size() != mass.rows())
    throw std::invalid_argument("discrete_relative_error: size mismatch");
  const Eigen::VectorXd diff = a - b;
  const double denom = b.dot(mass * b);
  if (!(denom > 0.0))
    throw std::invalid_argument("discrete_relative_error: reference has zero mass norm");
  return std::sqrt(diff.dot(mass * diff) / denom);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("least_squares_slope: need at least two samples");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("least_squares_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

double ReferenceSolution::evaluate(const Eigen::VectorXd& field, const Vec2& p) const {
  const Rect& dom = mesh.domain;
  const double cw = dom.width() / level;
  const double ch = dom.height() / level;

  // nodal fast path: exact when coarse vertices coincide with fine ones
  const double gi = (p.x - dom.x0) / cw;
  const double gj = (p.y - dom.y0) / ch;
  const long ri = std::lround(gi);
  const long rj = std::lround(gj);
  if (ri >= 0 && ri <= level && rj >= 0 && rj <= level && std::abs(gi - ri) <= 1e-9 &&
      std::abs(gj - rj) <= 1e-9) {
    return field[rj * (level + 1) + ri];
  }

  const long ci = std::clamp(static_cast<long>(std::floor(gi)), 0L, static_cast<long>(level - 1));
  const long cj = std::clamp(static_cast<long>(std::floor(gj)), 0L, static_cast<long>(level - 1));
  const long cell = cj * level + ci;
  const Cell& c = mesh.cells[cell];
  Eigen::VectorXd local(c.vertex_ids.size());
  for (std::size_t i = 0; i < c.vertex_ids.size(); ++i) local[i] = field[c.vertex_ids[i]];
  const Eigen::Vector3d coeffs = cell_coeffs[cell] * local;
  const ScaledMonomialBasis basis{c.centroid, c.diameter};
  return coeffs.dot(basis.eval_all(p));
}

ReferenceSolution compute_reference(const ModelSpec& model, int level, int num_steps,
                                    double t_end, const PicardConfig& picard,
                                    const LinearSolverConfig& linear, const Rect& domain) {
  ReferenceSolution ref;
  ref.mesh = generate_square_mesh(level, domain);
  ref.level = level;

  const GlobalOperators ops = assemble_global(ref.mesh);
  ref.cell_coeffs.reserve(ops.elements.size());
  for (const ElementOperators& el : ops.elements) ref.cell_coeffs.push_back(el.l2_coeffs);

  const TimeGrid grid{t_end, num_steps};
  RunResult result =
      run_simulation(ops, model, initial_state(ref.mesh, model), grid, picard, linear);
  ref.terminal = std::move(result.final_state);
  return ref;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> interpolate_reference(
    const ReferenceSolution& reference, const PolygonalMesh& coarse) {
  Eigen::VectorXd vi(coarse.num_vertices());
  Eigen::VectorXd wi(coarse.num_vertices());
  for (int i = 0; i < coarse.num_vertices(); ++i) {
    vi[i] = reference.evaluate(reference.terminal.v, coarse.vertices[i]);
    wi[i] = reference.evaluate(reference.terminal.w, coarse.vertices[i]);
  }
  return {std::move(vi), std::move(wi)};
}

ConvergenceStudy run_convergence(const ConvergenceOptions& options) {
  if (options.space_levels.empty() || options.time_steps.empty())
    throw std::invalid_argument("run_convergence: empty level lists");

  const ReferenceSolution reference =
      compute_reference(options.model, options.reference_space_level,
                        options.reference_time_steps, options.t_end, options.picard,
                        options.linear, options.mesh_params.domain);

  ConvergenceStudy study;
  study.space_levels = options.space_levels;
  study.time_steps = options.time_steps;
  study.t_end = options.t_end;
  const int ns = static_cast<int>(options.space_levels.size());
  const int nt = static_cast<int>(options.time_steps.size());
  study.error_v.resize(ns, nt);
  study.error_w.resize(ns, nt);

  for (int si = 0; si < ns; ++si) {
    const PolygonalMesh mesh =
        make_family_mesh(options.family, options.space_levels[si], options.mesh_params);
    study.mesh_h.push_back(mesh.h);
    const GlobalOperators ops = assemble_global(mesh);
    const auto [vi, wi] = interpolate_reference(reference, mesh);
    const FieldState start = initial_state(mesh, options.model);

    for (int ti = 0; ti < nt; ++ti) {
      const TimeGrid grid{options.t_end, options.time_steps[ti]};
      RunResult result = run_simulation(ops, options.model, start, grid, options.picard,
                                        options.linear);
      study.error_v(si, ti) = discrete_relative_error(result.final_state.v, vi, ops.mass);
      study.error_w(si, ti) = discrete_relative_error(result.final_state.w, wi, ops.mass);
      study.max_picard_iterations =
          std::max(study.max_picard_iterations, result.max_picard_iterations);
    }
  }

  // observed orders from log-log least squares
  if (ns >= 2) {
    std::vector<double> lh, lev, lew;
    for (int si = 0; si < ns; ++si) {
      lh.push_back(std::log(study.mesh_h[si]));
      lev.push_back(std::log(study.error_v(si, nt - 1)));
      lew.push_back(std::log(study.error_w(si, nt - 1)));
    }
    study.spatial_order_v = least_squares_slope(lh, lev);
    study.spatial_order_w = least_squares_slope(lh, lew);
  }
  if (nt >= 2) {
    std::vector<double> ldt, lev, lew;
    for (int ti = 0; ti < nt; ++ti) {
      ldt.push_back(std::log(options.t_end / study.time_steps[ti]));
      lev.push_back(std::log(study.error_v(ns - 1, ti)));
      lew.push_back(std::log(study.error_w(ns - 1, ti)));
    }
    study.temporal_order_v = least_squares_slope(ldt, lev);
    study.temporal_order_w = least_squares_slope(ldt, lew);
  }
  return study;
}

SnapshotRun run_snapshot_experiment(const SnapshotOptions& options) {
  SnapshotRun out;
  out.mesh = std::make_shared<const PolygonalMesh>(
      make_family_mesh(options.family, options.level, options.mesh_params));
  const GlobalOperators ops = assemble_global(*out.mesh);
  const TimeGrid grid{options.t_end, options.num_steps};

  // map the requested times to step indices (first step at or after)
  std::vector<int> steps;
  for (double t : options.snapshot_times) {
    const int n = static_cast<int>(std::ceil(t / grid.dt() - 1e-9));
    steps.push_back(std::clamp(n, 0, options.num_steps));
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());

  auto capture = [&](int step, const FieldState& state) {
    if (!std::binary_search(steps.begin(), steps.end(), step)) return;
    out.snapshots.push_back({step, state});
    SnapshotStats s;
    s.step = step;
    s.t = grid.time(step);
    s.min_v = state.v.minCoeff();
    s.max_v = state.v.maxCoeff();
    s.mean_v = state.v.mean();
    s.std_v = std::sqrt((state.v.array() - s.mean_v).square().mean());
    out.stats.push_back(s);
  };

  out.run = run_simulation(ops, options.model, initial_state(*out.mesh, options.model), grid,
                           options.picard, options.linear, capture);
  return out;
}

SnapshotOptions example2_options() {
  SnapshotOptions options;
  options.model = example2_model();
  options.family = MeshFamily::Squares;
  options.level = 128;
  options.t_end = 5.0;
  options.num_steps = 500;  // dt = 1/100
  options.snapshot_times = {0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0};
  options.picard.damping = 0.4;  // stiff kinetics need a relaxed update
  options.picard.max_iters = 50;
  return options;
}

SnapshotOptions example3_options() {
  SnapshotOptions options;
  options.model = example3_model();
  options.family = MeshFamily::Voronoi;
  options.level = 32;  // desk-scale default; the full-scale study uses 128
  options.t_end = 15.0;
  options.num_steps = 1500;  // dt = 1/100 at desk scale (1/200 at full scale)
  options.snapshot_times = {0.1, 1.0, 1.5, 2.0, 10.0, 15.0};
  options.picard.damping = 0.4;
  options.picard.max_iters = 50;
  return options;
}

}  // namespace fhnvem
