#pragma once

#include <yaml-cpp/yaml.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <limits>
#include <regex>
#include <string>
#include <string_view>

#include "fidelity/errors.hpp"

namespace fidelity {

/// Evaluation settings. Only the four paths are mandatory in YAML; every knob
/// has a default. Logarithms are natural throughout.
struct RunConfig {
  std::filesystem::path real_path;
  std::filesystem::path synthetic_path;
  std::filesystem::path report_path;
  std::filesystem::path plots_dir;

  std::size_t bins = 20;
  std::size_t knn_k = 10;
  std::size_t pca_dims = 8;
  std::size_t graph_sample_cap = 2000;
  std::size_t categorical_unique_max = 15;
  std::size_t ordinal_unique_max = 25;
  std::uint64_t seed = 42;
  bool enable_structural = true;
  // Run the embedding/graph block even when a table exceeds graph_sample_cap
  // (both sides are then subsampled to the cap).
  bool force_structural = false;

  /// Throws ConfigError on the first violated knob invariant.
  void validate() const {
    if (bins < 2) throw ConfigError("bins", "bins must be >= 2");
    if (knn_k < 1) throw ConfigError("knn_k", "knn_k must be >= 1");
    if (pca_dims < 1) throw ConfigError("pca_dims", "pca_dims must be >= 1");
    if (categorical_unique_max < 1) throw ConfigError("categorical_unique_max");
    if (ordinal_unique_max < 1) throw ConfigError("ordinal_unique_max");
    if (graph_sample_cap < knn_k + 1) {
      throw ConfigError("graph_sample_cap", "graph_sample_cap must be >= knn_k + 1");
    }
  }

  /// The dataset files must exist and be readable.
  void validate_inputs() const {
    auto check = [](const std::filesystem::path& p, const char* key) {
      std::error_code ec;
      if (!std::filesystem::is_regular_file(p, ec)) {
        throw ConfigError(key, std::string(key) + ": file not found: " + p.string());
      }
      std::FILE* f = std::fopen(p.c_str(), "rb");
      if (f == nullptr) throw ConfigError(key, std::string(key) + ": file not readable: " + p.string());
      std::fclose(f);
    };
    check(real_path, "real_dataset_path");
    check(synthetic_path, "synthetic_dataset_path");
  }
};

namespace config_detail {

inline std::string required_string(const YAML::Node& root, const char* key) {
  const auto node = root[key];
  if (!node || node.IsNull()) throw ConfigError(key, std::string("missing mandatory key: ") + key);
  if (!node.IsScalar() || node.Scalar().empty()) throw ConfigError(key, std::string(key) + " must be a non-empty string");
  return node.Scalar();
}

inline void optional_count(const YAML::Node& root, const char* key, std::size_t& out) {
  const auto node = root[key];
  if (!node || node.IsNull()) return;
  long long v = 0;
  try {
    v = node.as<long long>();
  } catch (const YAML::Exception&) {
    throw ConfigError(key, std::string(key) + " must be a positive integer");
  }
  if (v <= 0) throw ConfigError(key, std::string(key) + " must be a positive integer");
  out = static_cast<std::size_t>(v);
}

inline void optional_bool(const YAML::Node& root, const char* key, bool& out) {
  const auto node = root[key];
  if (!node || node.IsNull()) return;
  try {
    out = node.as<bool>();
  } catch (const YAML::Exception&) {
    throw ConfigError(key, std::string(key) + " must be a boolean");
  }
}

}  // namespace config_detail

/// Parse YAML configuration text. Absent optional keys keep their defaults.
inline RunConfig parse_config(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw ConfigError("<document>", std::string("malformed YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("<document>", "configuration must be a YAML mapping");

  using namespace config_detail;
  RunConfig cfg;
  cfg.real_path = required_string(root, "real_dataset_path");
  cfg.synthetic_path = required_string(root, "synthetic_dataset_path");
  cfg.report_path = required_string(root, "output_report");
  cfg.plots_dir = required_string(root, "plots_dir");

  optional_count(root, "bins", cfg.bins);
  optional_count(root, "knn_k", cfg.knn_k);
  optional_count(root, "pca_dims", cfg.pca_dims);
  optional_count(root, "graph_sample_cap", cfg.graph_sample_cap);
  optional_count(root, "categorical_unique_max", cfg.categorical_unique_max);
  optional_count(root, "ordinal_unique_max", cfg.ordinal_unique_max);
  if (const auto node = root["seed"]; node && !node.IsNull()) {
    try {
      cfg.seed = node.as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      throw ConfigError("seed", "seed must be an unsigned 64-bit integer");
    }
  }
  optional_bool(root, "enable_structural", cfg.enable_structural);
  optional_bool(root, "force_structural", cfg.force_structural);

  cfg.validate();
  return cfg;
}

}  // namespace fidelity
