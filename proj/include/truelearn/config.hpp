#pragma once

// Run configuration files.
//
// A config file holds one `key = value` pair per line; `#` starts a comment.
// Keys (all optional, defaults in brackets):
//
//   beta [0.5]  perf_beta [0.5]  draw_margin [0.3]  dynamics_tau [0]
//   decision_threshold [0.5]  depth_skill_level [0]
//   sr_metric [w2v]  omega [all]  mixing_mode [semantic_relatedness]
//   variance_source [source_topic]  edge_threshold [0]
//
// A grid file for tuning is a CSV whose header names a subset of these keys;
// each row is one point and unnamed keys keep their base values.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "truelearn/novel.hpp"
#include "truelearn/semantic.hpp"

namespace truelearn {

/// Invalid configuration or grid file. Maps to exit code 1 in the CLI.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ModelConfig model;
  PropagationConfig propagation;
  double edge_threshold = 0.0;  ///< relatedness above which session topics are linked

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Sets one key from its textual value. Throws ConfigError on an unknown key,
/// an unparsable value or a value outside its range.
void apply_config_value(RunConfig& cfg, std::string_view key, std::string_view value);

RunConfig parse_config(std::string_view text, const RunConfig& base = {});
RunConfig load_config(const std::filesystem::path& path, const RunConfig& base = {});

/// Every key in a fixed order, as a loadable config file.
std::string write_config(const RunConfig& cfg);

/// (key, formatted value) pairs in the same order as write_config.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);

std::vector<RunConfig> parse_grid(std::string_view text, const RunConfig& base);
std::vector<RunConfig> load_grid(const std::filesystem::path& path, const RunConfig& base);

}  // namespace truelearn
