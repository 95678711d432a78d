#include "fhnvem/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "fhnvem/format.hpp"

namespace fhnvem {

namespace {

std::string snapshot_name(int step) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snapshot_%06d.vtk", step);
  return buf;
}

PolygonalMesh mesh_from_config(const RunConfig& config) {
  if (!config.mesh.file.empty()) return load_mesh(config.mesh.file);
  return make_family_mesh(mesh_family_from_string(config.mesh.family), config.mesh.n,
                          mesh_params_from_config(config));
}

std::map<std::string, std::string> manifest_entries(const RunConfig& config,
                                                    const PolygonalMesh& mesh) {
  std::map<std::string, std::string> entries = config_key_values(config);
  entries["derived.dt"] = format_double(config.time.t_end / config.time.steps);
  entries["derived.mesh_hash"] = std::to_string(mesh_content_hash(mesh));
  entries["derived.mesh_vertices"] = std::to_string(mesh.num_vertices());
  entries["derived.mesh_cells"] = std::to_string(mesh.num_cells());
  entries["derived.mesh_h"] = format_double(mesh.h);
  return entries;
}

}  // namespace

RunSummary run_job(const RunConfig& config) {
  validate_config(config);
  std::filesystem::create_directories(config.output.dir);

  const PolygonalMesh mesh = mesh_from_config(config);
  const GlobalOperators ops = assemble_global(mesh);
  const ModelSpec model = model_from_config(config);
  const TimeGrid grid{config.time.t_end, config.time.steps};

  // manifest first: a run directory always tells what produced it
  write_manifest(manifest_entries(config, mesh), config.output.dir + "/manifest.txt");

  // snapshot schedule: first and last step, requested times, stride multiples
  std::vector<int> snapshot_steps = {0, config.time.steps};
  for (double t : snapshot_times_from_config(config)) {
    const int n = static_cast<int>(std::ceil(t / grid.dt() - 1e-9));
    snapshot_steps.push_back(std::clamp(n, 0, config.time.steps));
  }
  if (config.output.stride > 0)
    for (int n = 0; n <= config.time.steps; n += config.output.stride)
      snapshot_steps.push_back(n);
  std::sort(snapshot_steps.begin(), snapshot_steps.end());
  snapshot_steps.erase(std::unique(snapshot_steps.begin(), snapshot_steps.end()),
                       snapshot_steps.end());

  RunSummary summary;
  summary.out_dir = config.output.dir;
  summary.mesh_hash = mesh_content_hash(mesh);
  summary.vertices = mesh.num_vertices();
  summary.cells = mesh.num_cells();
  summary.mesh_h = mesh.h;
  summary.dt = grid.dt();
  summary.steps = config.time.steps;

  std::vector<SnapshotStats> stats;
  auto on_step = [&](int step, const FieldState& state) {
    if (!std::binary_search(snapshot_steps.begin(), snapshot_steps.end(), step)) return;
    if (config.output.vtk) {
      write_vtk_snapshot(mesh, state, config.output.dir + "/" + snapshot_name(step));
      ++summary.snapshots_written;
    }
    SnapshotStats s;
    s.step = step;
    s.t = grid.time(step);
    s.min_v = state.v.minCoeff();
    s.max_v = state.v.maxCoeff();
    s.mean_v = state.v.mean();
    s.std_v = std::sqrt((state.v.array() - s.mean_v).square().mean());
    stats.push_back(s);
  };

  const RunResult result =
      run_simulation(ops, model, initial_state(mesh, model), grid, config.picard,
                     config.linsolve, on_step);

  if (config.output.energy)
    write_energy_csv(result.energy_log, config.output.dir + "/energy.csv");
  write_snapshot_stats_csv(stats, config.output.dir + "/snapshots.csv");

  summary.max_picard_iterations = result.max_picard_iterations;
  summary.final_min_v = result.final_state.v.minCoeff();
  summary.final_max_v = result.final_state.v.maxCoeff();
  return summary;
}

MeshQualityReport mesh_job(const RunConfig& config, const std::string& mesh_out,
                           double quality_threshold) {
  validate_config(config);
  const PolygonalMesh mesh = mesh_from_config(config);
  save_mesh(mesh, mesh_out);
  return check_mesh_assumptions(mesh, quality_threshold);
}

ConvergenceStudy convergence_job(const RunConfig& base, const std::vector<int>& space_levels,
                                 const std::vector<int>& time_steps, int reference_level,
                                 int reference_steps) {
  validate_config(base);
  std::filesystem::create_directories(base.output.dir);

  ConvergenceOptions options;
  options.model = model_from_config(base);
  options.family = mesh_family_from_string(base.mesh.family);
  options.mesh_params = mesh_params_from_config(base);
  options.space_levels = space_levels;
  options.time_steps = time_steps;
  options.reference_space_level = reference_level;
  options.reference_time_steps = reference_steps;
  options.t_end = base.time.t_end;
  options.picard = base.picard;
  options.linear = base.linsolve;

  std::map<std::string, std::string> entries = config_key_values(base);
  entries["derived.dt"] = format_double(base.time.t_end / base.time.steps);
  entries["study.reference_level"] = std::to_string(reference_level);
  entries["study.reference_steps"] = std::to_string(reference_steps);
  auto join = [](const std::vector<int>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i)
      s += (i ? "," : "") + std::to_string(xs[i]);
    return s;
  };
  entries["study.space_levels"] = join(space_levels);
  entries["study.time_steps"] = join(time_steps);
  write_manifest(entries, base.output.dir + "/manifest.txt");

  const ConvergenceStudy study = run_convergence(options);
  write_error_tables(study, base.output.dir);
  return study;
}

RunConfig example_config(int id, bool full_scale) {
  switch (id) {
    case 1: {
      RunConfig config = preset_config("example1");
      config.output.dir = "out_example1";
      return config;  // the study grids live in convergence_job arguments
    }
    case 2: {
      RunConfig config = preset_config("example2");
      config.output.dir = "out_example2";
      return config;
    }
    case 3: {
      RunConfig config = preset_config("example3");
      if (full_scale) {
        config.mesh.n = 128;
        config.time.steps = 3000;  // dt = 1/200
      }
      config.output.dir = "out_example3";
      return config;
    }
    default:
      throw ConfigError("example id must be 1, 2 or 3");
  }
}

}  // namespace fhnvem
