#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mlwng/experiments.hpp"

namespace mlwng {

/// Malformed config text, unknown keys, or values of the wrong type.
/// The message names the key path or the line/column of a syntax error.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a JSON experiment config. Every field is optional and defaults
/// as in ExperimentConfig; unknown keys are rejected. Does not run
/// ExperimentConfig::validate().
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Pretty-printed JSON holding every field, so parsing it back gives the
/// same config.
std::string config_to_json(const ExperimentConfig& config);

}  // namespace mlwng
