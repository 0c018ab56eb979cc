#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polclone/experiment.hpp"

namespace polclone {

inline constexpr const char* kToolName = "polclone";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kConfigSchemaVersion = 1;

/// Command-line overrides applied on top of a config file.
struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
};

/// Builds an ExperimentConfig from its JSON form. Schema violations are
/// collected and thrown as one std::invalid_argument listing every offending
/// field path.
ExperimentConfig parse_experiment_config(const nlohmann::json& j, const CliOverrides& overrides);

/// Fully resolved JSON form of a config (defaults and overrides applied);
/// feeding it back through parse_experiment_config reproduces the same config.
nlohmann::json experiment_config_to_json(const ExperimentConfig& config);

/// Loads a config file. A run manifest (recognized by its "config" key) is
/// accepted too, replaying the embedded resolved config.
ExperimentConfig load_experiment_config(const std::string& path, const CliOverrides& overrides);

/// Manifest emitted alongside every result file.
nlohmann::json make_manifest(const std::string& command, const nlohmann::json& resolved_config,
                             const std::vector<std::string>& output_files);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace polclone
