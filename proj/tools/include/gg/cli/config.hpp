#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace gg::cli {

/// Invalid or inconsistent configuration; `field` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Map under study. Presets: identity, twist, rotation.
struct MapConfig {
  std::string preset = "twist";
  double area = 0.1;
  double strength = 1.0;
  std::vector<double> center{0.0, 0.0, 1.0};
  /// Exponent applied to the preset map.
  int power = 1;
};

struct ExperimentConfig {
  std::string experiment = "phibar";
  MapConfig map;
  int n = 4;
  int samples = 2000;
  std::vector<int> p_schedule{8, 16, 32};
  std::vector<double> epsilon_grid{1.0, 0.8, 0.6, 0.4};
  int m = 2;
  /// Entries of k for the embedding certificates; empty means every k with
  /// |k|_1 <= k_budget.
  std::vector<std::vector<int>> k;
  int k_budget = 8;
  std::string quasimorphism = "signature";
  std::string truncation = "none";
  std::string sampling = "uniform";
  std::uint64_t seed = 1;
  double integrator_step = 1e-3;
  int defect_trials = 2000;
  int entropy_iters = 200;
  std::string output = "out";
  unsigned workers = 0;
  bool dump_scene = false;
};

/// Parses and validates; throws ConfigError. Missing keys take defaults.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Normalized form: every field present, keys sorted.
nlohmann::json to_json(const ExperimentConfig& c);
std::string normalized_text(const ExperimentConfig& c);

/// FNV-1a 64-bit hash of the normalized text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);
std::uint64_t fnv1a64(std::string_view bytes);

void validate(const ExperimentConfig& c);

}  // namespace gg::cli
