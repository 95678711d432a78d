#pragma once

#include "fhnvem/config.hpp"
#include "fhnvem/output.hpp"

namespace fhnvem {

// End-to-end job runners shared by the command line tool and the test suite.
// Each writes its artifacts under config.output.dir and returns a summary.

struct RunSummary {
  std::string out_dir;
  std::uint64_t mesh_hash = 0;
  int vertices = 0;
  int cells = 0;
  double mesh_h = 0.0;
  double dt = 0.0;
  int steps = 0;
  int max_picard_iterations = 0;
  double final_min_v = 0.0, final_max_v = 0.0;
  int snapshots_written = 0;
};

// Full simulation: build or load the mesh, write the manifest up front, step
// to t_end writing VTK snapshots / the energy log / snapshot statistics.
RunSummary run_job(const RunConfig& config);

// Generate a mesh, report shape-regularity, save it in the text format.
MeshQualityReport mesh_job(const RunConfig& config, const std::string& mesh_out,
                           double quality_threshold);

// Convergence study around the model described by `base`; writes the error
// and rate tables plus a manifest into base.output.dir.
ConvergenceStudy convergence_job(const RunConfig& base, const std::vector<int>& space_levels,
                                 const std::vector<int>& time_steps, int reference_level,
                                 int reference_steps);

// Configuration for the numbered standard experiments (1: convergence,
// 2: stimulated wave, 3: spiral). `full_scale` selects the full-resolution
// setup for 1 and 3 (2 is full scale already).
RunConfig example_config(int id, bool full_scale);

}  // namespace fhnvem
