// Command line front end: mesh generation, single runs, convergence studies,
// and the numbered standard experiments. Configuration layers from a named
// preset, through an optional config file, to --set key=value flags (last
// flag wins).

#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "fhnvem/driver.hpp"
#include "fhnvem/format.hpp"

namespace {

struct CommonOptions {
  std::string preset = "example1";
  std::string config_file;
  std::vector<std::string> overrides;  // key=value
  std::string output_dir;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("-p,--preset", common.preset,
                  "Base preset: example1 | example2 | example3 | constant")
      ->capture_default_str();
  cmd->add_option("-c,--config", common.config_file,
                  "Config file (key = value lines, [section] headers) applied over the preset")
      ->check(CLI::ExistingFile);
  cmd->add_option("-s,--set", common.overrides,
                  "Override a single key, e.g. --set mesh.n=64 (may repeat; wins over the file)");
  cmd->add_option("-o,--output", common.output_dir, "Output directory (wins over output.dir)");
}

fhnvem::RunConfig build_config(const CommonOptions& common) {
  fhnvem::RunConfig config = fhnvem::preset_config(common.preset);
  if (!common.config_file.empty()) fhnvem::apply_config_file(config, common.config_file);
  for (const std::string& item : common.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw fhnvem::ConfigError("--set expects key=value, got '" + item + "'");
    fhnvem::apply_override(config, item.substr(0, eq), item.substr(eq + 1));
  }
  if (!common.output_dir.empty()) config.output.dir = common.output_dir;
  fhnvem::validate_config(config);
  return config;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& csv) {
  std::vector<int> values;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const auto comma = csv.find(',', pos);
    const std::string item = csv.substr(pos, comma == std::string::npos ? csv.size() - pos
                                                                        : comma - pos);
    if (!item.empty()) {
      try {
        values.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw fhnvem::ConfigError(key + ": expected comma-separated integers, got '" + csv + "'");
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (values.empty()) throw fhnvem::ConfigError(key + ": empty list");
  return values;
}

void print_run_summary(const fhnvem::RunSummary& summary) {
  std::printf("mesh: %d vertices, %d cells, h = %s (hash %llu)\n", summary.vertices,
              summary.cells, fhnvem::format_double(summary.mesh_h).c_str(),
              static_cast<unsigned long long>(summary.mesh_hash));
  std::printf("time: %d steps, dt = %s\n", summary.steps,
              fhnvem::format_double(summary.dt).c_str());
  std::printf("fixed-point sweeps per step (max): %d\n", summary.max_picard_iterations);
  std::printf("final excitation range: [%s, %s]\n",
              fhnvem::format_double(summary.final_min_v).c_str(),
              fhnvem::format_double(summary.final_max_v).c_str());
  std::printf("artifacts: %d snapshots in %s\n", summary.snapshots_written,
              summary.out_dir.c_str());
}

void print_quality_report(const fhnvem::MeshQualityReport& report) {
  std::printf("shape regularity at threshold %s: min edge ratio %s, min kernel ratio %s\n",
              fhnvem::format_double(report.threshold).c_str(),
              fhnvem::format_double(report.min_edge_ratio).c_str(),
              fhnvem::format_double(report.min_star_radius_ratio).c_str());
  if (report.pass) {
    std::printf("quality: PASS (%zu cells)\n", report.edge_ratios.size());
  } else {
    std::printf("quality: FAIL (%zu offending cells)\n", report.failing_cells.size());
  }
}

void print_study(const fhnvem::ConvergenceStudy& study) {
  std::printf("errors (excitation), rows h = 1/level, cols dt = t_end/steps:\n");
  for (int i = 0; i < study.error_v.rows(); ++i) {
    std::printf("  1/%-4d", study.space_levels[i]);
    for (int j = 0; j < study.error_v.cols(); ++j)
      std::printf(" %12.6e", study.error_v(i, j));
    std::printf("\n");
  }
  std::printf("observed orders: spatial v %.3f w %.3f, temporal v %.3f w %.3f\n",
              study.spatial_order_v, study.spatial_order_w, study.temporal_order_v,
              study.temporal_order_w);
  std::printf("max fixed-point sweeps across all runs: %d\n", study.max_picard_iterations);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Polygonal-mesh virtual element solver for a nonlocal reaction-diffusion "
      "model of cardiac tissue"};
  app.require_subcommand(1);

  CommonOptions mesh_common, run_common, conv_common;

  // ---- mesh ----
  CLI::App* mesh_cmd = app.add_subcommand("mesh", "Generate a mesh, check shape regularity, save it");
  add_common(mesh_cmd, mesh_common);
  std::string mesh_out = "mesh.txt";
  double quality_threshold = 0.01;
  mesh_cmd->add_option("--out", mesh_out, "Mesh file to write")->capture_default_str();
  mesh_cmd->add_option("--quality-threshold", quality_threshold,
                       "Minimal edge/diameter and kernel/diameter ratio")
      ->capture_default_str();

  // ---- run ----
  CLI::App* run_cmd = app.add_subcommand("run", "Run one simulation job and write its artifacts");
  add_common(run_cmd, run_common);

  // ---- convergence ----
  CLI::App* conv_cmd =
      app.add_subcommand("convergence", "Terminal-time error study against a fine reference");
  add_common(conv_cmd, conv_common);
  std::string space_csv = "8,16,32";
  std::string steps_csv = "10,20,40,80";
  int ref_level = 64;
  int ref_steps = 800;
  conv_cmd->add_option("--space-levels", space_csv, "Mesh levels (h = 1/level)")
      ->capture_default_str();
  conv_cmd->add_option("--time-steps", steps_csv, "Step counts (dt = t_end/steps)")
      ->capture_default_str();
  conv_cmd->add_option("--ref-level", ref_level, "Reference mesh level")->capture_default_str();
  conv_cmd->add_option("--ref-steps", ref_steps, "Reference step count")->capture_default_str();

  // ---- example ----
  CLI::App* example_cmd =
      app.add_subcommand("example", "Run a numbered standard experiment (1, 2 or 3)");
  int example_id = 1;
  bool full_scale = false;
  std::vector<std::string> example_sets;
  std::string example_out;
  example_cmd->add_option("--id", example_id, "1: convergence study, 2: stimulated wave, 3: spiral")
      ->required()
      ->check(CLI::Range(1, 3));
  example_cmd->add_flag("--full-scale", full_scale,
                        "Full-resolution setup for experiments 1 and 3");
  example_cmd->add_option("-s,--set", example_sets, "Override a single key (may repeat)");
  example_cmd->add_option("-o,--output", example_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mesh_cmd) {
      const fhnvem::RunConfig config = build_config(mesh_common);
      const fhnvem::MeshQualityReport report =
          fhnvem::mesh_job(config, mesh_out, quality_threshold);
      std::printf("wrote %s\n", mesh_out.c_str());
      print_quality_report(report);
      return report.pass ? 0 : 1;
    }
    if (*run_cmd) {
      print_run_summary(fhnvem::run_job(build_config(run_common)));
      return 0;
    }
    if (*conv_cmd) {
      const fhnvem::RunConfig config = build_config(conv_common);
      const fhnvem::ConvergenceStudy study = fhnvem::convergence_job(
          config, parse_int_list("--space-levels", space_csv),
          parse_int_list("--time-steps", steps_csv), ref_level, ref_steps);
      print_study(study);
      std::printf("error and rate tables written to %s\n", config.output.dir.c_str());
      return 0;
    }
    if (*example_cmd) {
      fhnvem::RunConfig config = fhnvem::example_config(example_id, full_scale);
      for (const std::string& item : example_sets) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
          throw fhnvem::ConfigError("--set expects key=value, got '" + item + "'");
        fhnvem::apply_override(config, item.substr(0, eq), item.substr(eq + 1));
      }
      if (!example_out.empty()) config.output.dir = example_out;
      fhnvem::validate_config(config);
      if (example_id == 1) {
        const std::vector<int> levels =
            full_scale ? std::vector<int>{8, 16, 32, 64} : std::vector<int>{8, 16, 32};
        const std::vector<int> steps{10, 20, 40, 80};
        const int ref = full_scale ? 128 : 64;
        print_study(fhnvem::convergence_job(config, levels, steps, ref, 800));
        std::printf("error and rate tables written to %s\n", config.output.dir.c_str());
      } else {
        print_run_summary(fhnvem::run_job(config));
      }
      return 0;
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}
