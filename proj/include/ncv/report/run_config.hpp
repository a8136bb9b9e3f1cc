#pragma once

#include "ncv/core/synthetic.hpp"
#include "ncv/features/engineering.hpp"
#include "ncv/features/synthetic_volumes.hpp"
#include "ncv/learners/grid.hpp"
#include "ncv/learners/model_spec.hpp"
#include "ncv/protocol/config.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ncv::report {

// Gaussian feature matrix (no regional volumes).
struct GaussianSource {
  data::SyntheticSpec spec;
};

// Synthetic regional-volume table over the default registry.
struct VolumeSource {
  features::SyntheticVolumeSpec spec;
};

struct CsvSource {
  std::filesystem::path path;  // resolved against the config file's directory
  std::string label_column;
  std::string id_column;
  double label_cutoff = 3.0;  // label 1 iff score >= cutoff
  std::optional<std::string> tiv_column;
  std::optional<std::string> age_column;
};

using DataSource = std::variant<GaussianSource, VolumeSource, CsvSource>;

struct FeatureSetConfig {
  std::string name;
  bool engineered = false;
  std::vector<features::FeatureStep> steps = features::all_feature_steps();
  bool include_raw = true;
  std::optional<std::filesystem::path> registry;
};

struct ModelConfig {
  learn::ModelSpec spec;
  // Empty: no tuning, the model's own hyperparameters are used.
  learn::HyperParamGrid grid;
};

struct RunConfig {
  std::uint64_t seed = 42;
  DataSource data;
  std::vector<FeatureSetConfig> feature_sets;
  std::vector<ModelConfig> models;
  std::vector<protocol::Strategy> strategies;
  // Strategy, model and grid are filled in per run.
  protocol::ProtocolConfig protocol;
  std::filesystem::path output_dir = "report";
  // Normalized echo of the configuration with defaults applied.
  nlohmann::json echo;
};

// Strict: unknown keys, wrong types and out-of-range values throw
// ConfigError naming the JSON path (e.g. "$.protocol.callibration").
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text,
                            const std::filesystem::path& base_dir = ".");
RunConfig parse_config_json(const nlohmann::json& j, const std::filesystem::path& base_dir = ".");

}  // namespace ncv::report
