#include "truelearn/commands.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "truelearn/analysis.hpp"
#include "truelearn/digest.hpp"
#include "truelearn/text.hpp"

namespace truelearn {

namespace {

std::string format_name(EventFormat format) {
  return format == EventFormat::kCsv ? "csv" : "jsonl";
}

InputFile describe_input(const std::filesystem::path& path) {
  return {path.filename().string(), file_sha256(path)};
}

Dataset load_dataset(const DataOptions& input, std::ostream& log) {
  LoadReport rep;
  auto ds = load_events(input.data, LoadOptions{input.format, input.top_k_topics}, &rep);
  for (const auto& w : rep.warnings) log << "warning: " << input.data.string() << ": " << w << "\n";
  return ds;
}

SRTable load_table(const std::filesystem::path& path, SRMetric metric, std::ostream& log) {
  SRLoadReport rep;
  auto table = load_sr_table(path, metric, &rep);
  for (const auto& w : rep.warnings) log << "warning: " << path.string() << ": " << w << "\n";
  return table;
}

RunConfig resolve_config(const RunOptions& options) {
  RunConfig cfg = options.config ? load_config(*options.config) : RunConfig{};
  if (options.sr_metric) cfg.propagation.sr_metric = *options.sr_metric;
  if (options.omega) cfg.propagation.omega = *options.omega;
  return cfg;
}

void check_run_options(const RunOptions& options, bool needs_table) {
  if (!(options.train_fraction > 0.0 && options.train_fraction < 1.0)) {
    throw UsageError("--train-fraction must lie strictly between 0 and 1");
  }
  if (options.workers == 0) throw UsageError("--workers must be at least 1");
  if (options.top_learners && *options.top_learners == 0) {
    throw UsageError("--top-learners must be at least 1");
  }
  if (needs_table && !options.sr_table) {
    throw UsageError("the semantic-truelearn model needs --sr-table");
  }
}

// Subsets, then splits; the split only depends on the seed and the kept ids.
Dataset prepare_split(Dataset ds, const RunOptions& options) {
  if (options.top_learners) ds = top_learners(ds, *options.top_learners);
  return split_learners(std::move(ds), options.train_fraction, options.seed);
}

RunManifest base_manifest(std::string command, const RunOptions& options, const RunConfig& cfg) {
  RunManifest m;
  m.command = std::move(command);
  m.config = cfg;
  m.inputs["data"] = describe_input(options.input.data);
  m.seed = options.seed;
  m.train_fraction = options.train_fraction;
  m.top_learners = options.top_learners;
  m.top_k_topics = options.input.top_k_topics;
  m.event_format = format_name(options.input.format);
  return m;
}

ModelRun run_model(const Dataset& ds, const std::vector<LearnerId>& learners, ModelKind kind,
                   const RunConfig& cfg, const SRTable* table, std::size_t workers,
                   std::ostream& log) {
  ModelRun run;
  run.kind = kind;
  run.propagation = cfg.propagation;
  run.scores = replay_cohort(ds, learners, kind, cfg, table, workers, &run.skipped_learners);
  if (run.skipped_learners > 0) {
    log << "warning: " << run.skipped_learners << " learner(s) without events were skipped\n";
  }
  if (run.scores.empty()) throw DataError("no learner with events to score");
  run.metrics = aggregate(run.scores);
  return run;
}

void write_output(const std::filesystem::path& dir, std::string_view name,
                  std::string_view contents, std::ostream& log) {
  write_file(dir / name, contents);
  log << "wrote " << (dir / name).string() << "\n";
}

}  // namespace

EvalReport run_evaluate(const EvaluateOptions& options, std::ostream& log) {
  if (options.compare && options.model != ModelKind::kSemanticTrueLearn) {
    throw UsageError("--compare pits semantic-truelearn against the baseline; "
                     "it cannot be used with --model truelearn-novel");
  }
  const bool semantic = options.model == ModelKind::kSemanticTrueLearn;
  check_run_options(options, semantic);
  const RunConfig cfg = resolve_config(options);

  std::optional<SRTable> table;
  if (semantic) table = load_table(*options.sr_table, cfg.propagation.sr_metric, log);
  const Dataset ds = prepare_split(load_dataset(options.input, log), options);
  const auto test = ds.learners_in(Split::kTest);
  log << "evaluating " << test.size() << " test learner(s) of " << ds.learners.size() << "\n";

  EvalReport report;
  report.manifest = base_manifest("evaluate", options, cfg);
  if (semantic) report.manifest.inputs["sr_table"] = describe_input(*options.sr_table);
  if (options.compare) {
    report.models.push_back(run_model(ds, test, ModelKind::kTrueLearnNovel, cfg, nullptr,
                                      options.workers, log));
  }
  report.models.push_back(run_model(ds, test, options.model, cfg, table ? &*table : nullptr,
                                    options.workers, log));
  if (options.compare) report.comparison = compare_runs(report.models[0], report.models[1]);
  for (const auto& run : report.models) report.manifest.models.emplace_back(model_id(run.kind));
  report.manifest.outputs = {std::string(kReportFile), std::string(kSummaryFile)};

  write_output(options.out_dir, kReportFile, report_to_json(report), log);
  write_output(options.out_dir, kSummaryFile, summary_csv(report), log);
  return report;
}

TuneResult run_tune(const TuneOptions& options, std::ostream& log) {
  const bool semantic = options.model == ModelKind::kSemanticTrueLearn;
  check_run_options(options, semantic);
  const RunConfig base = resolve_config(options);
  const auto grid = load_grid(options.grid, base);

  const Dataset ds = prepare_split(load_dataset(options.input, log), options);
  const auto train = ds.learners_in(Split::kTrain);
  log << "tuning on " << train.size() << " train learner(s), " << grid.size() << " grid point(s)\n";

  std::map<SRMetric, SRTable> tables;
  TuneResult result;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SRTable* table = nullptr;
    if (semantic) {
      const auto metric = grid[i].propagation.sr_metric;
      auto it = tables.find(metric);
      if (it == tables.end()) {
        it = tables.emplace(metric, load_table(*options.sr_table, metric, log)).first;
      }
      table = &it->second;
    }
    auto run = run_model(ds, train, options.model, grid[i], table, options.workers, log);
    result.points.push_back({grid[i], run.metrics});
    const double f1 = run.metrics.f1;
    if (i > 0 && f1 == result.points[result.best].metrics.f1) {
      result.tied = true;
      log << "grid point " << i + 1 << " ties point " << result.best + 1
          << " on F1; keeping the earlier point\n";
    }
    if (f1 > result.points[result.best].metrics.f1) result.best = i;
  }

  result.manifest = base_manifest("tune", options, base);
  result.manifest.inputs["grid"] = describe_input(options.grid);
  if (semantic) result.manifest.inputs["sr_table"] = describe_input(*options.sr_table);
  result.manifest.models = {std::string(model_id(options.model))};
  result.manifest.outputs = {std::string(kBestConfigFile), std::string(kTuneResultsFile)};

  const std::string stamp = manifest_line(result.manifest);
  std::string table_csv = stamp;
  std::vector<std::string> header = {"point"};
  for (const auto& [key, value] : config_entries(base)) header.push_back(key);
  header.insert(header.end(), {"Prec.", "Rec.", "F1", "selected"});
  for (std::size_t c = 0; c < header.size(); ++c) {
    table_csv += (c ? "," : "") + csv_escape(header[c]);
  }
  table_csv += "\n";
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& p = result.points[i];
    table_csv += std::to_string(i + 1);
    for (const auto& [key, value] : config_entries(p.config)) table_csv += "," + csv_escape(value);
    table_csv += "," + format_real(p.metrics.precision) + "," + format_real(p.metrics.recall) +
                 "," + format_real(p.metrics.f1) + "," + (i == result.best ? "yes" : "no") + "\n";
  }
  write_output(options.out_dir, kBestConfigFile,
               stamp + write_config(result.points[result.best].config), log);
  write_output(options.out_dir, kTuneResultsFile, table_csv, log);
  log << "selected grid point " << result.best + 1 << " (F1 "
      << format_real(result.points[result.best].metrics.f1) << ")\n";
  return result;
}

AnalyzeResult run_analyze(const AnalyzeOptions& options, std::ostream& log) {
  if (options.reports.empty()) throw UsageError("analyze needs at least one --report");
  if (options.max_events && *options.max_events == 0) {
    throw UsageError("--max-events must be at least 1");
  }
  const auto data_digest = file_sha256(options.data);
  const auto table_digest = file_sha256(options.sr_table);

  std::vector<EvalReport> reports;
  for (const auto& path : options.reports) {
    auto r = report_from_json(read_file(path));
    const auto it = r.manifest.inputs.find("data");
    if (it == r.manifest.inputs.end() || it->second.sha256 != data_digest) {
      throw DataError("report " + path.string() + " was not built from " + options.data.string() +
                      " (data digest mismatch)");
    }
    if (auto t = r.manifest.inputs.find("sr_table");
        t != r.manifest.inputs.end() && t->second.sha256 != table_digest) {
      throw DataError("report " + path.string() + " used a different relatedness table than " +
                      options.sr_table.string());
    }
    if (!reports.empty() && (r.manifest.event_format != reports[0].manifest.event_format ||
                             r.manifest.top_k_topics != reports[0].manifest.top_k_topics)) {
      throw DataError("reports " + options.reports[0].string() + " and " + path.string() +
                      " loaded the events differently");
    }
    reports.push_back(std::move(r));
  }

  // A baseline shared by several --compare reports is analyzed once.
  const auto same_run = [](const ModelRun& a, const ModelRun& b) {
    if (run_label(a) != run_label(b) || a.scores.size() != b.scores.size()) return false;
    for (std::size_t i = 0; i < a.scores.size(); ++i) {
      if (a.scores[i].learner_id != b.scores[i].learner_id || a.scores[i].trace != b.scores[i].trace) {
        return false;
      }
    }
    return true;
  };
  std::vector<const ModelRun*> runs;
  for (const auto& r : reports) {
    for (const auto& m : r.models) {
      if (std::none_of(runs.begin(), runs.end(), [&](const ModelRun* seen) { return same_run(*seen, m); })) {
        runs.push_back(&m);
      }
    }
  }
  if (runs.empty()) throw DataError("the reports contain no model runs");
  const auto learner_ids = [](const ModelRun& run) {
    std::vector<LearnerId> ids;
    for (const auto& s : run.scores) ids.push_back(s.learner_id);
    return ids;
  };
  const auto reference = learner_ids(*runs[0]);
  for (const auto* run : runs) {
    if (learner_ids(*run) != reference) {
      throw DataError("the reports score different learner sets");
    }
  }

  const auto& first = reports[0].manifest;
  RunConfig cfg = first.config;
  if (options.sr_metric) cfg.propagation.sr_metric = *options.sr_metric;
  DataOptions input{options.data,
                    first.event_format == "jsonl" ? EventFormat::kJsonLines : EventFormat::kCsv,
                    first.top_k_topics};
  const Dataset ds = load_dataset(input, log);
  const SRTable table = load_table(options.sr_table, cfg.propagation.sr_metric, log);

  AnalyzeResult result;
  std::vector<std::vector<LearnerFeatures>> feature_rows;
  std::map<std::string, int> label_count;
  std::size_t longest = 0;
  for (const auto* run : runs) {
    std::string label = run_label(*run);
    if (const int seen = label_count[label]++; seen > 0) label += " #" + std::to_string(seen + 1);
    result.labels.push_back(label);
    auto rows = learner_feature_table(ds, run->scores, table, cfg.edge_threshold);
    result.correlations.push_back(feature_recall_correlations(rows));
    feature_rows.push_back(std::move(rows));
    for (const auto& s : run->scores) longest = std::max(longest, s.trace.size());
  }
  const std::size_t max_n = options.max_events.value_or(std::max<std::size_t>(longest, 1));
  for (const auto* run : runs) result.recall_series.push_back(recall_by_event_index(run->scores, max_n));

  auto& m = result.manifest;
  m.command = "analyze";
  m.config = cfg;
  m.inputs["data"] = {options.data.filename().string(), data_digest};
  m.inputs["sr_table"] = {options.sr_table.filename().string(), table_digest};
  for (std::size_t i = 0; i < options.reports.size(); ++i) {
    m.inputs["report_" + std::to_string(i + 1)] = describe_input(options.reports[i]);
  }
  m.top_k_topics = first.top_k_topics;
  m.event_format = first.event_format;
  for (const auto* run : runs) m.models.emplace_back(model_id(run->kind));
  m.outputs = {std::string(kSroccFile), std::string(kRecallByEventFile), std::string(kFeaturesFile)};

  write_output(options.out_dir, kSroccFile, srocc_csv(m, result.labels, result.correlations), log);
  write_output(options.out_dir, kRecallByEventFile,
               recall_by_event_csv(m, result.labels, result.recall_series), log);
  write_output(options.out_dir, kFeaturesFile, features_csv(m, result.labels, feature_rows), log);
  return result;
}

void run_validate(const ValidateOptions& options, std::ostream& out) {
  LoadReport rep;
  const auto ds =
      load_events(options.input.data, LoadOptions{options.input.format, options.input.top_k_topics}, &rep);
  std::set<TopicId> topics;
  std::size_t engaged = 0;
  for (const auto& [id, session] : ds.learners) {
    for (const auto& ev : session) {
      if (ev.label == Engagement::kEngaged) ++engaged;
      for (const auto& tc : ev.topics) topics.insert(tc.topic);
    }
  }
  const std::size_t events = ds.num_events();
  out << options.input.data.string() << ": " << rep.rows << " row(s), " << ds.learners.size()
      << " learner(s), " << events << " event(s), " << topics.size() << " distinct topic(s)\n";
  if (events > 0) {
    out << "engaged rate: " << format_real(static_cast<double>(engaged) / static_cast<double>(events))
        << "\n";
  }
  out << "dropped events without topics: " << rep.dropped_empty_events
      << ", clamped depths: " << rep.clamped_depths << "\n";
  for (const auto& w : rep.warnings) out << "warning: " << w << "\n";

  if (options.sr_table) {
    SRLoadReport srep;
    const auto table = load_sr_table(*options.sr_table, options.sr_metric, &srep);
    out << options.sr_table->string() << ": " << srep.rows << " row(s), " << table.size()
        << " " << metric_display_name(options.sr_metric) << " pair(s), "
        << (srep.wide_format ? "wide" : "long") << " layout\n";
    out << "clamped values: " << srep.clamped_values << ", duplicate pairs: " << srep.duplicate_pairs
        << ", self pairs: " << srep.self_pairs << "\n";
    for (const auto& w : srep.warnings) out << "warning: " << w << "\n";
    std::size_t covered = 0;
    for (TopicId t : topics) {
      bool any = false;
      for (TopicId u : topics) {
        if (u != t && table.lookup(t, u) > 0.0) {
          any = true;
          break;
        }
      }
      if (any) ++covered;
    }
    out << "topics with a related topic in the data: " << covered << " of " << topics.size() << "\n";
  }
}

}  // namespace truelearn
