#include "gg/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gg/estimator.hpp"
#include "gg/quasimorphism.hpp"

namespace gg::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kExperiments{"phi", "phibar", "vanishing", "scaling", "additivity", "embedding"};
const std::set<std::string> kPresets{"identity", "twist", "rotation"};

template <class T>
void read(const json& j, const char* key, T& out, const std::string& prefix = "") {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(prefix + key, std::string("wrong type (") + e.what() + ")");
  }
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& prefix) {
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw ConfigError(prefix + k, "unknown key");
  }
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "configuration must be a JSON object");
  check_keys(j,
             {"experiment", "map", "n", "samples", "p_schedule", "epsilon_grid", "m", "k", "k_budget",
              "quasimorphism", "truncation", "sampling", "seed", "integrator_step", "defect_trials",
              "entropy_iters", "output", "workers", "dump_scene"},
             "");
  ExperimentConfig c;
  read(j, "experiment", c.experiment);
  if (j.contains("map")) {
    const json& m = j.at("map");
    if (!m.is_object()) throw ConfigError("map", "must be an object");
    check_keys(m, {"preset", "area", "strength", "center", "power"}, "map.");
    read(m, "preset", c.map.preset, "map.");
    read(m, "area", c.map.area, "map.");
    read(m, "strength", c.map.strength, "map.");
    read(m, "center", c.map.center, "map.");
    read(m, "power", c.map.power, "map.");
  }
  read(j, "n", c.n);
  read(j, "samples", c.samples);
  read(j, "p_schedule", c.p_schedule);
  read(j, "epsilon_grid", c.epsilon_grid);
  read(j, "m", c.m);
  read(j, "k", c.k);
  read(j, "k_budget", c.k_budget);
  read(j, "quasimorphism", c.quasimorphism);
  read(j, "truncation", c.truncation);
  read(j, "sampling", c.sampling);
  read(j, "seed", c.seed);
  read(j, "integrator_step", c.integrator_step);
  read(j, "defect_trials", c.defect_trials);
  read(j, "entropy_iters", c.entropy_iters);
  read(j, "output", c.output);
  read(j, "workers", c.workers);
  read(j, "dump_scene", c.dump_scene);
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

void validate(const ExperimentConfig& c) {
  if (!kExperiments.count(c.experiment)) throw ConfigError("experiment", "unknown experiment '" + c.experiment + "'");
  if (!kPresets.count(c.map.preset)) throw ConfigError("map.preset", "unknown preset '" + c.map.preset + "'");
  if (!(c.map.area > 0.0 && c.map.area < 1.0)) throw ConfigError("map.area", "must lie in (0, 1)");
  if (!std::isfinite(c.map.strength)) throw ConfigError("map.strength", "must be finite");
  if (c.map.center.size() != 3) throw ConfigError("map.center", "must have three coordinates");
  if (std::hypot(c.map.center[0], c.map.center[1], c.map.center[2]) < 1e-12) {
    throw ConfigError("map.center", "must be nonzero");
  }
  if (c.map.power == 0) throw ConfigError("map.power", "must be nonzero");
  if (c.n < 2) throw ConfigError("n", "must be at least 2");
  if (c.samples < 1) throw ConfigError("samples", "must be positive");
  if (c.p_schedule.empty()) throw ConfigError("p_schedule", "must not be empty");
  for (std::size_t i = 0; i < c.p_schedule.size(); ++i) {
    if (c.p_schedule[i] < 1 || (i > 0 && c.p_schedule[i] <= c.p_schedule[i - 1])) {
      throw ConfigError("p_schedule", "must be positive and strictly increasing");
    }
  }
  for (double e : c.epsilon_grid) {
    if (!(e > 0.0 && e <= 1.0)) throw ConfigError("epsilon_grid", "values must lie in (0, 1]");
  }
  if (c.experiment == "scaling") {
    std::set<double> distinct(c.epsilon_grid.begin(), c.epsilon_grid.end());
    if (distinct.size() < 3) throw ConfigError("epsilon_grid", "scaling needs at least 3 distinct values");
    if (c.map.preset != "twist") throw ConfigError("map.preset", "scaling needs the twist preset");
  }
  if (c.m < 1) throw ConfigError("m", "must be at least 1");
  for (const auto& k : c.k) {
    if (static_cast<int>(k.size()) != c.m) throw ConfigError("k", "every entry must have m components");
  }
  if (c.k_budget < 0) throw ConfigError("k_budget", "must be non-negative");
  if (c.quasimorphism.rfind("stand_in:", 0) == 0) {
    try {
      std::size_t used = 0;
      std::stod(c.quasimorphism.substr(9), &used);
      if (used != c.quasimorphism.size() - 9) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw ConfigError("quasimorphism", "stand_in needs a number, e.g. stand_in:0.5");
    }
    if (c.experiment == "vanishing" || c.experiment == "embedding") {
      throw ConfigError("quasimorphism", "the stand-in is not a braid quasimorphism");
    }
  } else {
    try {
      QuasimorphismSpec::by_name(c.quasimorphism);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("quasimorphism", e.what());
    }
  }
  try {
    truncation_mode_from_string(c.truncation);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("truncation", e.what());
  }
  try {
    sampling_scheme_from_string(c.sampling);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("sampling", e.what());
  }
  if (c.experiment == "scaling" && truncation_mode_from_string(c.truncation) != TruncationMode::enforce_reducible_vanishing) {
    throw ConfigError("truncation", "scaling needs enforce_reducible_vanishing");
  }
  if (!(c.integrator_step > 0.0 && c.integrator_step <= 0.1)) throw ConfigError("integrator_step", "must lie in (0, 0.1]");
  if (c.defect_trials < 1) throw ConfigError("defect_trials", "must be positive");
  if (c.entropy_iters < 1) throw ConfigError("entropy_iters", "must be positive");
  if (c.output.empty()) throw ConfigError("output", "must not be empty");
}

nlohmann::json to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["map"] = {{"preset", c.map.preset},
              {"area", c.map.area},
              {"strength", c.map.strength},
              {"center", c.map.center},
              {"power", c.map.power}};
  j["n"] = c.n;
  j["samples"] = c.samples;
  j["p_schedule"] = c.p_schedule;
  j["epsilon_grid"] = c.epsilon_grid;
  j["m"] = c.m;
  j["k"] = c.k;
  j["k_budget"] = c.k_budget;
  j["quasimorphism"] = c.quasimorphism;
  j["truncation"] = c.truncation;
  j["sampling"] = c.sampling;
  j["seed"] = c.seed;
  j["integrator_step"] = c.integrator_step;
  j["defect_trials"] = c.defect_trials;
  j["entropy_iters"] = c.entropy_iters;
  j["output"] = c.output;
  j["workers"] = c.workers;
  j["dump_scene"] = c.dump_scene;
  return j;
}

std::string normalized_text(const ExperimentConfig& c) { return to_json(c).dump(2) + "\n"; }

std::string config_hash(const ExperimentConfig& c) {
  // Output location and worker count do not change any number.
  ExperimentConfig h = c;
  h.output = "";
  h.workers = 0;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(normalized_text(h))));
  return buf;
}

}  // namespace gg::cli
