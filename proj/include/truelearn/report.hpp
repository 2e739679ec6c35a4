#pragma once

// Report files: the run manifest, the full JSON evaluation report and the
// CSV tables derived from it.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "truelearn/analysis.hpp"
#include "truelearn/config.hpp"
#include "truelearn/metrics.hpp"
#include "truelearn/replay.hpp"
#include "truelearn/stats.hpp"

namespace truelearn {

inline constexpr std::string_view kToolVersion = "1.0.0";

struct InputFile {
  std::string name;    ///< file name without directories
  std::string sha256;
  friend bool operator==(const InputFile&, const InputFile&) = default;
};

/// Everything that determines a run's outputs. Worker counts and output
/// directories are deliberately absent: they do not change any result.
struct RunManifest {
  std::string command;
  std::string version{kToolVersion};
  RunConfig config;
  std::map<std::string, InputFile> inputs;  ///< keyed by role ("data", "sr_table", ...)
  std::optional<std::uint64_t> seed;
  std::optional<double> train_fraction;
  std::optional<std::size_t> top_learners;
  std::optional<std::size_t> top_k_topics;
  std::string event_format = "csv";
  std::vector<std::string> models;
  std::vector<std::string> outputs;

  /// Canonical JSON text (sorted keys, no whitespace).
  std::string canonical() const;
  /// SHA-256 of canonical().
  std::string digest() const;
};

struct ModelRun {
  ModelKind kind = ModelKind::kTrueLearnNovel;
  PropagationConfig propagation;  ///< used by the semantic model only
  WeightedMetrics metrics;
  std::vector<LearnerScore> scores;  ///< sorted by learner id
  std::size_t skipped_learners = 0;
};

/// Paired one-tailed tests of models[1] against models[0], per metric.
struct Comparison {
  TTestResult precision;
  TTestResult recall;
  TTestResult f1;
};

struct EvalReport {
  RunManifest manifest;
  std::vector<ModelRun> models;
  std::optional<Comparison> comparison;
};

/// Paired tests over learners common to both runs. Throws DataError when the
/// learner sets differ or fewer than 2 learners are scored.
Comparison compare_runs(const ModelRun& baseline, const ModelRun& challenger);

/// "Most Related Topic", "3 Most Related Topics", ..., "All Related Topics".
std::string omega_label(OmegaSize omega);
/// Column label for a run, e.g. "TrueLearn Novel" or
/// "Semantic TrueLearn (W2V, All Related Topics)".
std::string run_label(const ModelRun& run);

std::string report_to_json(const EvalReport& report);
/// Parses a report written by report_to_json. Throws DataError on malformed
/// input or when the embedded digest does not match the manifest.
EvalReport report_from_json(std::string_view text);

/// One row per model: Algorithm, SR Metric, Omega, Prec., Rec., F1, plus the
/// one-tailed p-values of the comparison when present.
std::string summary_csv(const EvalReport& report);

/// The header line every CSV output starts with.
std::string manifest_line(const RunManifest& manifest);

std::string recall_by_event_csv(const RunManifest& manifest,
                                const std::vector<std::string>& labels,
                                const std::vector<std::vector<RecallPoint>>& series);

/// Features as rows, one column per run; rho is shown only where p < alpha.
std::string srocc_csv(const RunManifest& manifest, const std::vector<std::string>& labels,
                      const std::vector<std::vector<FeatureCorrelation>>& columns);

/// Per-learner features with one recall column per run. Every run must list
/// the same learners in the same order.
std::string features_csv(const RunManifest& manifest, const std::vector<std::string>& labels,
                         const std::vector<std::vector<LearnerFeatures>>& runs);

}  // namespace truelearn
