#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gg/cli/config.hpp"
#include "gg/estimator.hpp"
#include "json.hpp"

namespace gg::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitSamplingBudget = 3,
  kExitInvariant = 4,
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
};

struct RunResult {
  std::filesystem::path out;
  std::vector<std::filesystem::path> files;
  std::string config_hash;
};

/// Runs the configured experiment and writes its artifacts below c.output.
/// Throws ConfigError and library errors.
RunResult run_experiment(const ExperimentConfig& c);

/// Exit status for the exception currently being handled.
int exit_code_for_current_exception(std::ostream& err);

/// Loads, applies overrides, runs; reports errors on `err`.
int run_command(const std::filesystem::path& config, const Overrides& overrides, std::ostream& out, std::ostream& err);

nlohmann::json estimate_json(const GGEstimate& e);

}  // namespace gg::cli
