#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sgdrates/harness.hpp"
#include "sgdrates/verify.hpp"

namespace sgdrates {

/// Configuration problem with a location (line:column for syntax errors, a
/// JSON pointer for schema errors). Maps to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses a file as JSON; syntax errors are reported with line and column.
nlohmann::json load_json_file(const std::string& path);

/// Applies a `path=value` override to the raw document. The path is dotted
/// (e.g. trials_per_T=1, problem.Q=0.5); the value is parsed as JSON when
/// possible and treated as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& key_value);

/// Strict parse of the experiment schema: schema_version must equal 1,
/// unknown keys are rejected, missing required keys are named.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);

nlohmann::json to_json(const ExperimentConfig& cfg);

/// Tail-check configuration: either an optimizer mode (problem + schedule +
/// single T) or a direct lemma0 sampling mode.
struct TailcheckConfig {
  bool lemma0_mode = false;

  // lemma0 mode
  Lemma0TailSpec::Dist dist = Lemma0TailSpec::Dist::Gaussian;
  double sigma = 1.0;
  double bias = 1e-9;

  // optimizer mode
  ProblemConfig problem;
  ScheduleKind schedule_kind = ScheduleKind::Thm1;
  double schedule_r = 0.0;
  double schedule_decay = 0.5;
  std::int64_t T = 1000;

  // common
  std::int64_t trials = 1000;
  std::vector<double> theta_grid;
  std::uint64_t base_seed = 0;
  std::string output_path = "results/tailcheck";
};

TailcheckConfig parse_tailcheck_config(const nlohmann::json& doc);

nlohmann::json to_json(const TailcheckConfig& cfg);

}  // namespace sgdrates
