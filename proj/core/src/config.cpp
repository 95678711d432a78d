#include "fhnvem/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <limits>

#include "fhnvem/format.hpp"

namespace fhnvem {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as an integer");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    throw ConfigError("config key '" + key + "': cannot parse '" + value +
                      "' as an unsigned integer");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a boolean");
}

struct KeyBinding {
  std::function<void(RunConfig&, const std::string& key, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::map<std::string, KeyBinding>& key_table() {
  static const std::map<std::string, KeyBinding> table = [] {
    std::map<std::string, KeyBinding> t;
    auto add = [&t](const std::string& key, auto setter, auto getter) {
      t[key] = {setter, getter};
    };

#define FHNVEM_DOUBLE_KEY(KEY, FIELD)                                                       \
  add(KEY,                                                                                  \
      [](RunConfig& c, const std::string& k, const std::string& v) { c.FIELD = parse_double(k, v); }, \
      [](const RunConfig& c) { return format_double(c.FIELD); })
#define FHNVEM_INT_KEY(KEY, FIELD)                                                          \
  add(KEY,                                                                                  \
      [](RunConfig& c, const std::string& k, const std::string& v) { c.FIELD = parse_int(k, v); },    \
      [](const RunConfig& c) { return std::to_string(c.FIELD); })
#define FHNVEM_BOOL_KEY(KEY, FIELD)                                                        \
  add(KEY,                                                                                 \
      [](RunConfig& c, const std::string& k, const std::string& v) { c.FIELD = parse_bool(k, v); },   \
      [](const RunConfig& c) { return c.FIELD ? std::string("true") : std::string("false"); })
#define FHNVEM_STRING_KEY(KEY, FIELD)                                      \
  add(KEY, [](RunConfig& c, const std::string&, const std::string& v) { c.FIELD = v; }, \
      [](const RunConfig& c) { return c.FIELD; })

    FHNVEM_DOUBLE_KEY("domain.x0", domain.x0);
    FHNVEM_DOUBLE_KEY("domain.y0", domain.y0);
    FHNVEM_DOUBLE_KEY("domain.x1", domain.x1);
    FHNVEM_DOUBLE_KEY("domain.y1", domain.y1);
    FHNVEM_STRING_KEY("mesh.family", mesh.family);
    FHNVEM_INT_KEY("mesh.n", mesh.n);
    FHNVEM_DOUBLE_KEY("mesh.amplitude", mesh.amplitude);
    add("mesh.seed",
        [](RunConfig& c, const std::string& k, const std::string& v) {
          c.mesh.seed = parse_u64(k, v);
        },
        [](const RunConfig& c) { return std::to_string(c.mesh.seed); });
    FHNVEM_INT_KEY("mesh.lloyd", mesh.lloyd);
    FHNVEM_STRING_KEY("mesh.file", mesh.file);
    FHNVEM_DOUBLE_KEY("time.t_end", time.t_end);
    FHNVEM_INT_KEY("time.steps", time.steps);
    FHNVEM_DOUBLE_KEY("diffusion.slope", diffusion.slope);
    FHNVEM_DOUBLE_KEY("diffusion.floor", diffusion.floor);
    FHNVEM_DOUBLE_KEY("kinetics.a", kinetics.a);
    FHNVEM_DOUBLE_KEY("kinetics.b", kinetics.b);
    FHNVEM_DOUBLE_KEY("kinetics.lambda", kinetics.lambda);
    FHNVEM_DOUBLE_KEY("kinetics.theta", kinetics.theta);
    FHNVEM_BOOL_KEY("stimulus.enabled", stimulus.enabled);
    FHNVEM_DOUBLE_KEY("stimulus.amplitude", stimulus.amplitude);
    FHNVEM_DOUBLE_KEY("stimulus.x", stimulus.center.x);
    FHNVEM_DOUBLE_KEY("stimulus.y", stimulus.center.y);
    FHNVEM_DOUBLE_KEY("stimulus.radius", stimulus.radius);
    FHNVEM_DOUBLE_KEY("stimulus.t_on", stimulus.t_on);
    FHNVEM_DOUBLE_KEY("stimulus.t_off", stimulus.t_off);
    FHNVEM_STRING_KEY("initial.preset", initial.preset);
    FHNVEM_DOUBLE_KEY("initial.v", initial.v);
    FHNVEM_DOUBLE_KEY("initial.w", initial.w);
    FHNVEM_DOUBLE_KEY("picard.tol", picard.tol);
    FHNVEM_INT_KEY("picard.max_iters", picard.max_iters);
    FHNVEM_DOUBLE_KEY("picard.damping", picard.damping);
    FHNVEM_DOUBLE_KEY("linsolve.tol", linsolve.tol);
    FHNVEM_INT_KEY("linsolve.max_iters", linsolve.max_iters);
    FHNVEM_STRING_KEY("output.dir", output.dir);
    FHNVEM_INT_KEY("output.stride", output.stride);
    FHNVEM_STRING_KEY("output.snapshot_times", output.snapshot_times);
    FHNVEM_BOOL_KEY("output.vtk", output.vtk);
    FHNVEM_BOOL_KEY("output.energy", output.energy);

#undef FHNVEM_DOUBLE_KEY
#undef FHNVEM_INT_KEY
#undef FHNVEM_BOOL_KEY
#undef FHNVEM_STRING_KEY
    return t;
  }();
  return table;
}

}  // namespace

RunConfig preset_config(const std::string& name) {
  RunConfig c;
  c.preset = name;
  if (name == "example1") {
    // defaults in RunConfig already describe the convergence-test model
    c.kinetics = example1_model().kinetics;
    c.initial.preset = "example1";
  } else if (name == "example2") {
    const ModelSpec m = example2_model();
    c.kinetics = m.kinetics;
    c.stimulus = m.stimulus;
    c.initial.preset = "example2";
    c.mesh.family = "squares";
    c.mesh.n = 128;
    c.time.t_end = 5.0;
    c.time.steps = 500;
    c.picard.damping = 0.4;
    c.output.snapshot_times = "0.1,0.5,1,1.5,2,2.5,3,4,5";
  } else if (name == "example3") {
    const ModelSpec m = example3_model();
    c.kinetics = m.kinetics;
    c.initial.preset = "example3";
    c.mesh.family = "voronoi";
    c.mesh.n = 32;  // desk scale; the full-scale setup uses n=128, steps=3000
    c.time.t_end = 15.0;
    c.time.steps = 1500;
    c.picard.damping = 0.4;
    c.output.snapshot_times = "0.1,1,1.5,2,10,15";
  } else if (name == "constant") {
    // spatially constant smoke-test configuration
    c.kinetics = example1_model().kinetics;
    c.initial.preset = "constant";
    c.initial.v = 0.3;
    c.initial.w = 0.1;
    c.mesh.n = 4;
  } else {
    throw ConfigError("unknown preset '" + name +
                      "' (expected example1|example2|example3|constant)");
  }
  return c;
}

void apply_override(RunConfig& config, const std::string& key, const std::string& value) {
  const auto& table = key_table();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown configuration key '" + key + "'");
  it->second.set(config, key, value);
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line, section;
  int lineno = 0;
  int assignments = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!section.empty()) key = section + "." + key;
    if (key == "preset") {
      if (assignments > 0)
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": 'preset' must be the first assignment");
      config = preset_config(value);
    } else {
      try {
        apply_override(config, key, value);
      } catch (const ConfigError& err) {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": " + err.what());
      }
    }
    ++assignments;
  }
}

void validate_config(const RunConfig& config) {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
  };
  if (!(config.domain.x1 > config.domain.x0)) fail("domain.x1", "must exceed domain.x0");
  if (!(config.domain.y1 > config.domain.y0)) fail("domain.y1", "must exceed domain.y0");
  try {
    mesh_family_from_string(config.mesh.family);
  } catch (const std::invalid_argument& err) {
    fail("mesh.family", err.what());
  }
  if (config.mesh.n < 1) fail("mesh.n", "must be >= 1");
  if (config.mesh.amplitude < 0.0) fail("mesh.amplitude", "must be >= 0");
  if (config.mesh.lloyd < 0) fail("mesh.lloyd", "must be >= 0");
  if (!(config.time.t_end > 0.0)) fail("time.t_end", "must be positive");
  if (config.time.steps < 1) fail("time.steps", "must be >= 1");
  if (!(config.diffusion.floor > 0.0)) fail("diffusion.floor", "must be positive");
  if (!(config.stimulus.radius > 0.0)) fail("stimulus.radius", "must be positive");
  try {
    initial_preset_from_string(config.initial.preset);
  } catch (const std::invalid_argument& err) {
    fail("initial.preset", err.what());
  }
  if (!(config.picard.tol > 0.0)) fail("picard.tol", "must be positive");
  if (config.picard.max_iters < 1) fail("picard.max_iters", "must be >= 1");
  if (!(config.picard.damping > 0.0) || config.picard.damping > 1.0)
    fail("picard.damping", "must lie in (0, 1]");
  if (!(config.linsolve.tol > 0.0)) fail("linsolve.tol", "must be positive");
  if (config.linsolve.max_iters < 1) fail("linsolve.max_iters", "must be >= 1");
  if (config.output.stride < 0) fail("output.stride", "must be >= 0");
  if (config.output.dir.empty()) fail("output.dir", "must not be empty");
  snapshot_times_from_config(config);  // throws on bad list
}

std::map<std::string, std::string> config_key_values(const RunConfig& config) {
  std::map<std::string, std::string> out;
  out["preset"] = config.preset;
  for (const auto& [key, binding] : key_table()) out[key] = binding.get(config);
  return out;
}

ModelSpec model_from_config(const RunConfig& config) {
  ModelSpec model;
  model.diffusion = config.diffusion;
  model.kinetics = config.kinetics;
  model.stimulus = config.stimulus;
  model.initial.preset = initial_preset_from_string(config.initial.preset);
  model.initial.v_const = config.initial.v;
  model.initial.w_const = config.initial.w;
  return model;
}

MeshFamilyParams mesh_params_from_config(const RunConfig& config) {
  MeshFamilyParams params;
  params.domain = config.domain;
  params.amplitude = config.mesh.amplitude;
  params.seed = config.mesh.seed;
  params.lloyd_iterations = config.mesh.lloyd;
  return params;
}

std::vector<double> snapshot_times_from_config(const RunConfig& config) {
  std::vector<double> times;
  const std::string& spec = config.output.snapshot_times;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string item = trim(spec.substr(pos, comma - pos));
    if (!item.empty()) times.push_back(parse_double("output.snapshot_times", item));
    pos = comma + 1;
  }
  return times;
}

}  // namespace fhnvem
