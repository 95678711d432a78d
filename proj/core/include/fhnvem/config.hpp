#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fhnvem/experiments.hpp"

namespace fhnvem {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One simulation job, fully described. Built in three layers: a named preset
// fills every field, an optional config file overrides it, then individual
// key overrides (command line) win. Unknown keys and malformed values are
// hard errors naming the offending key.
struct RunConfig {
  std::string preset = "example1";

  Rect domain;
  struct {
    std::string family = "squares";  // squares | distorted | voronoi
    int n = 32;                      // resolution level (voronoi uses n^2 seeds)
    double amplitude = 0.2;          // distorted-quad displacement factor
    std::uint64_t seed = 42;
    int lloyd = 3;
    std::string file;  // when set, load this mesh instead of generating
  } mesh;
  struct {
    double t_end = 1.0;
    int steps = 100;
  } time;
  DiffusionLaw diffusion;
  IonicKinetics kinetics;
  Stimulus stimulus;
  struct {
    std::string preset = "example1";
    double v = 0.0;
    double w = 0.0;
  } initial;
  PicardConfig picard;
  LinearSolverConfig linsolve;
  struct {
    std::string dir = "out";
    int stride = 0;              // extra snapshot every k steps (0: none)
    std::string snapshot_times;  // comma-separated times
    bool vtk = true;
    bool energy = true;
  } output;
};

// The named base configurations: example1, example2, example3, constant.
RunConfig preset_config(const std::string& name);

// `key = value` lines with optional [section] headers and # comments.
// A `preset = name` line is honored only as the first assignment.
void apply_config_file(RunConfig& config, const std::string& path);

void apply_override(RunConfig& config, const std::string& key, const std::string& value);

// Range/consistency checks beyond parsing; throws ConfigError.
void validate_config(const RunConfig& config);

// Every key with its current value, sorted (the manifest body).
std::map<std::string, std::string> config_key_values(const RunConfig& config);

ModelSpec model_from_config(const RunConfig& config);
MeshFamilyParams mesh_params_from_config(const RunConfig& config);
std::vector<double> snapshot_times_from_config(const RunConfig& config);

}  // namespace fhnvem
