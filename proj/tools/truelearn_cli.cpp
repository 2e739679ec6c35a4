// truelearn: evaluate, tune and analyze engagement models on event logs.

#include <CLI11.hpp>

#include <iostream>

#include "truelearn/commands.hpp"

namespace tl = truelearn;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct RawRunFlags {
  std::string format = "csv";
  std::string model;
  std::string sr_metric;
  std::string omega;
  std::string sr_table;
  std::string config;
  std::size_t top_k_topics = 0;
  std::size_t top_learners = 0;
};

void add_data_flags(CLI::App* cmd, tl::DataOptions& data, RawRunFlags& raw) {
  cmd->add_option("--data", data.data, "event log (CSV or JSON lines)")->required();
  cmd->add_option("--format", raw.format, "event log format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--top-k-topics", raw.top_k_topics, "keep the k highest-coverage topics per event");
}

void add_run_flags(CLI::App* cmd, tl::RunOptions& opts, RawRunFlags& raw) {
  add_data_flags(cmd, opts.input, raw);
  cmd->add_option("--sr-table", raw.sr_table, "semantic relatedness table");
  cmd->add_option("--sr-metric", raw.sr_metric, "mw|w2v|pmi|lm|jaccard|cp|ba");
  cmd->add_option("--omega", raw.omega, "1|3|5|10|all");
  cmd->add_option("--model", raw.model, "truelearn-novel|semantic-truelearn");
  cmd->add_option("--config", raw.config, "key = value configuration file");
  cmd->add_option("--seed", opts.seed, "learner split seed")->capture_default_str();
  cmd->add_option("--train-fraction", opts.train_fraction, "share of learners in the train split")
      ->capture_default_str();
  cmd->add_option("--top-learners", raw.top_learners, "keep only the N most active learners");
  cmd->add_option("--out-dir", opts.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--workers", opts.workers, "replay threads")->capture_default_str();
}

void resolve_data(tl::DataOptions& data, const RawRunFlags& raw) {
  data.format = raw.format == "jsonl" ? tl::EventFormat::kJsonLines : tl::EventFormat::kCsv;
  if (raw.top_k_topics > 0) data.top_k_topics = raw.top_k_topics;
}

std::optional<tl::SRMetric> metric_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto m = tl::parse_metric(text);
  if (!m) throw tl::UsageError("unknown --sr-metric '" + text + "'");
  return m;
}

void resolve_run(tl::RunOptions& opts, const RawRunFlags& raw, bool compare) {
  resolve_data(opts.input, raw);
  if (!raw.model.empty()) {
    auto kind = tl::parse_model_kind(raw.model);
    if (!kind) throw tl::UsageError("unknown --model '" + raw.model + "'");
    opts.model = *kind;
  } else if (compare) {
    opts.model = tl::ModelKind::kSemanticTrueLearn;
  }
  opts.sr_metric = metric_flag(raw.sr_metric);
  if (!raw.omega.empty()) {
    opts.omega = tl::OmegaSize::parse(raw.omega);
    if (!opts.omega) throw tl::UsageError("unknown --omega '" + raw.omega + "'");
  }
  if (!raw.sr_table.empty()) opts.sr_table = raw.sr_table;
  if (!raw.config.empty()) opts.config = raw.config;
  if (raw.top_learners > 0) opts.top_learners = raw.top_learners;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Engagement prediction with TrueLearn models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tl::kToolVersion));

  tl::EvaluateOptions eval;
  RawRunFlags eval_raw;
  auto* evaluate = app.add_subcommand("evaluate", "replay the test learners and report metrics");
  add_run_flags(evaluate, eval, eval_raw);
  evaluate->add_flag("--compare", eval.compare, "run the baseline and the semantic model with paired tests");

  tl::TuneOptions tune;
  RawRunFlags tune_raw;
  auto* tune_cmd = app.add_subcommand("tune", "grid search on the train learners");
  add_run_flags(tune_cmd, tune, tune_raw);
  tune_cmd->add_option("--grid", tune.grid, "CSV grid of configuration values")->required();

  tl::AnalyzeOptions analyze;
  std::string analyze_metric;
  std::size_t max_events = 0;
  auto* analyze_cmd = app.add_subcommand("analyze", "topic-graph features against recall");
  analyze_cmd->add_option("--report", analyze.reports, "report.json from evaluate")->required();
  analyze_cmd->add_option("--data", analyze.data, "event log the reports were built from")->required();
  analyze_cmd->add_option("--sr-table", analyze.sr_table, "semantic relatedness table")->required();
  analyze_cmd->add_option("--sr-metric", analyze_metric, "relatedness metric for the topic graph");
  analyze_cmd->add_option("--max-events", max_events, "length of the recall-by-event series");
  analyze_cmd->add_option("--out-dir", analyze.out_dir, "output directory")->capture_default_str();

  tl::ValidateOptions validate;
  RawRunFlags validate_raw;
  std::string validate_table;
  std::string validate_metric;
  auto* validate_cmd = app.add_subcommand("validate-data", "check input files and print a summary");
  add_data_flags(validate_cmd, validate.input, validate_raw);
  validate_cmd->add_option("--sr-table", validate_table, "semantic relatedness table");
  validate_cmd->add_option("--sr-metric", validate_metric, "metric column to read");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (evaluate->parsed()) {
      resolve_run(eval, eval_raw, eval.compare);
      const auto report = tl::run_evaluate(eval, std::cerr);
      std::cout << tl::summary_csv(report);
    } else if (tune_cmd->parsed()) {
      resolve_run(tune, tune_raw, false);
      const auto result = tl::run_tune(tune, std::cerr);
      std::cout << tl::write_config(result.points[result.best].config);
    } else if (analyze_cmd->parsed()) {
      analyze.sr_metric = metric_flag(analyze_metric);
      if (max_events > 0) analyze.max_events = max_events;
      tl::run_analyze(analyze, std::cerr);
    } else if (validate_cmd->parsed()) {
      resolve_data(validate.input, validate_raw);
      if (!validate_table.empty()) validate.sr_table = validate_table;
      if (auto m = metric_flag(validate_metric)) validate.sr_metric = *m;
      tl::run_validate(validate, std::cout);
    }
  } catch (const tl::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const tl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
