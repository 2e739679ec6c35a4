#pragma once

// The command-line operations as library calls. Each reads its inputs,
// writes its output files into `out_dir` and reports progress to `log`.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "truelearn/config.hpp"
#include "truelearn/dataset.hpp"
#include "truelearn/replay.hpp"
#include "truelearn/report.hpp"

namespace truelearn {

/// Inconsistent command-line options. Maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DataOptions {
  std::filesystem::path data;
  EventFormat format = EventFormat::kCsv;
  std::optional<std::size_t> top_k_topics;
};

/// Settings shared by evaluate and tune.
struct RunOptions {
  DataOptions input;
  std::optional<std::filesystem::path> sr_table;
  std::optional<std::filesystem::path> config;
  std::optional<SRMetric> sr_metric;  ///< overrides the config file
  std::optional<OmegaSize> omega;     ///< overrides the config file
  ModelKind model = ModelKind::kTrueLearnNovel;
  std::uint64_t seed = 42;
  double train_fraction = 0.7;
  std::optional<std::size_t> top_learners;
  std::filesystem::path out_dir = ".";
  std::size_t workers = 1;
};

struct EvaluateOptions : RunOptions {
  /// Run the baseline and the semantic model on the same split and add the
  /// paired tests. Requires the semantic model.
  bool compare = false;
};

inline constexpr std::string_view kReportFile = "report.json";
inline constexpr std::string_view kSummaryFile = "summary.csv";

/// Replays the test-split learners and writes report.json and summary.csv.
EvalReport run_evaluate(const EvaluateOptions& options, std::ostream& log);

struct TuneOptions : RunOptions {
  std::filesystem::path grid;
};

struct TunePoint {
  RunConfig config;
  WeightedMetrics metrics;
};

struct TuneResult {
  std::vector<TunePoint> points;
  std::size_t best = 0;
  bool tied = false;  ///< another point matched the best F1
  RunManifest manifest;
};

inline constexpr std::string_view kBestConfigFile = "best_config.txt";
inline constexpr std::string_view kTuneResultsFile = "tune_results.csv";

/// Grid search on the train-split learners, selecting by weighted F1 (the
/// first point in grid order wins ties). Writes best_config.txt and
/// tune_results.csv.
TuneResult run_tune(const TuneOptions& options, std::ostream& log);

struct AnalyzeOptions {
  std::vector<std::filesystem::path> reports;
  std::filesystem::path data;
  std::filesystem::path sr_table;
  std::optional<SRMetric> sr_metric;       ///< defaults to the reports' config
  std::optional<std::size_t> max_events;   ///< recall series length cap
  std::filesystem::path out_dir = ".";
};

inline constexpr std::string_view kSroccFile = "srocc.csv";
inline constexpr std::string_view kRecallByEventFile = "recall_by_event.csv";
inline constexpr std::string_view kFeaturesFile = "features.csv";

struct AnalyzeResult {
  std::vector<std::string> labels;
  std::vector<std::vector<FeatureCorrelation>> correlations;
  std::vector<std::vector<RecallPoint>> recall_series;
  RunManifest manifest;
};

/// Topic-graph features against recall for every model in the given
/// reports. Refuses reports built from other data or other learner sets.
AnalyzeResult run_analyze(const AnalyzeOptions& options, std::ostream& log);

struct ValidateOptions {
  DataOptions input;
  std::optional<std::filesystem::path> sr_table;
  SRMetric sr_metric = SRMetric::kW2V;
};

/// Loads the inputs and prints what was found. Throws DataError on invalid
/// input.
void run_validate(const ValidateOptions& options, std::ostream& out);

}  // namespace truelearn
