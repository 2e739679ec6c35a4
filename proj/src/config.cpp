#include "truelearn/config.hpp"

#include <algorithm>
#include <cmath>

#include "truelearn/dataset.hpp"
#include "truelearn/text.hpp"

namespace truelearn {

namespace {

double parse_number(std::string_view key, std::string_view value) {
  double x = 0.0;
  if (!parse_real(trim(value), x) || !std::isfinite(x)) {
    throw ConfigError("config key '" + std::string(key) + "' needs a number, got '" +
                      std::string(value) + "'");
  }
  return x;
}

void validate(const RunConfig& cfg) {
  try {
    cfg.model.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(cfg.edge_threshold >= 0.0 && cfg.edge_threshold < 1.0)) {
    throw ConfigError("edge_threshold must lie in [0, 1)");
  }
}

// Strips a trailing comment and surrounding blanks.
std::string_view content_of(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  return trim(line);
}

}  // namespace

void apply_config_value(RunConfig& cfg, std::string_view key_in, std::string_view value_in) {
  const std::string key = to_lower(trim(key_in));
  const std::string_view value = trim(value_in);
  auto& m = cfg.model;
  auto& p = cfg.propagation;
  if (key == "beta") {
    m.beta = parse_number(key, value);
  } else if (key == "perf_beta") {
    m.perf_beta = parse_number(key, value);
  } else if (key == "draw_margin") {
    m.draw_margin = parse_number(key, value);
  } else if (key == "dynamics_tau") {
    m.dynamics_tau = parse_number(key, value);
  } else if (key == "decision_threshold") {
    m.decision_threshold = parse_number(key, value);
  } else if (key == "depth_skill_level") {
    m.depth_skill_level = parse_number(key, value);
  } else if (key == "edge_threshold") {
    cfg.edge_threshold = parse_number(key, value);
  } else if (key == "sr_metric") {
    auto metric = parse_metric(value);
    if (!metric) throw ConfigError("unknown sr_metric '" + std::string(value) + "'");
    p.sr_metric = *metric;
  } else if (key == "omega") {
    auto omega = OmegaSize::parse(value);
    if (!omega) {
      throw ConfigError("omega must be one of 1, 3, 5, 10, all; got '" + std::string(value) + "'");
    }
    p.omega = *omega;
  } else if (key == "mixing_mode") {
    auto mode = parse_mixing_mode(value);
    if (!mode) throw ConfigError("unknown mixing_mode '" + std::string(value) + "'");
    p.mixing = *mode;
  } else if (key == "variance_source") {
    auto source = parse_variance_source(value);
    if (!source) throw ConfigError("unknown variance_source '" + std::string(value) + "'");
    p.variance_source = *source;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

RunConfig parse_config(std::string_view text, const RunConfig& base) {
  RunConfig cfg = base;
  const auto lines = split_lines(strip_bom(text));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = content_of(lines[i]);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(i + 1) + ": expected key = value");
    }
    try {
      apply_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, const RunConfig& base) {
  try {
    return parse_config(read_file(path), base);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg) {
  const auto& m = cfg.model;
  const auto& p = cfg.propagation;
  return {
      {"beta", format_real(m.beta)},
      {"perf_beta", format_real(m.perf_beta)},
      {"draw_margin", format_real(m.draw_margin)},
      {"dynamics_tau", format_real(m.dynamics_tau)},
      {"decision_threshold", format_real(m.decision_threshold)},
      {"depth_skill_level", format_real(m.depth_skill_level)},
      {"sr_metric", std::string(metric_token(p.sr_metric))},
      {"omega", p.omega.to_string()},
      {"mixing_mode", std::string(mixing_mode_name(p.mixing))},
      {"variance_source", std::string(variance_source_name(p.variance_source))},
      {"edge_threshold", format_real(cfg.edge_threshold)},
  };
}

std::string write_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [key, value] : config_entries(cfg)) out += key + " = " + value + "\n";
  return out;
}

std::vector<RunConfig> parse_grid(std::string_view text, const RunConfig& base) {
  std::vector<std::string> header;
  std::vector<RunConfig> points;
  const auto lines = split_lines(strip_bom(text));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_csv_row(line);
    if (header.empty()) {
      for (auto& f : fields) header.push_back(to_lower(trim(f)));
      // Checks the names up front so a bad header fails even without rows.
      const auto known = config_entries(base);
      for (std::size_t c = 0; c < header.size(); ++c) {
        const auto& key = header[c];
        if (std::none_of(known.begin(), known.end(), [&](const auto& kv) { return kv.first == key; })) {
          throw ConfigError("grid header: unknown config key '" + key + "'");
        }
        if (std::find(header.begin(), header.begin() + c, key) != header.begin() + c) {
          throw ConfigError("grid header: duplicate key '" + key + "'");
        }
      }
      continue;
    }
    if (fields.size() != header.size()) {
      throw ConfigError("grid line " + std::to_string(i + 1) + ": expected " +
                        std::to_string(header.size()) + " fields");
    }
    RunConfig point = base;
    try {
      for (std::size_t c = 0; c < header.size(); ++c) apply_config_value(point, header[c], fields[c]);
      validate(point);
    } catch (const ConfigError& e) {
      throw ConfigError("grid line " + std::to_string(i + 1) + ": " + e.what());
    }
    points.push_back(point);
  }
  if (points.empty()) throw ConfigError("grid has no points");
  return points;
}

std::vector<RunConfig> load_grid(const std::filesystem::path& path, const RunConfig& base) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  return parse_grid(text, base);
}

}  // namespace truelearn
