#include "truelearn/report.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"
#include "truelearn/digest.hpp"
#include "truelearn/text.hpp"

namespace truelearn {

using nlohmann::json;

namespace {

json manifest_to_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["version"] = m.version;
  json cfg = json::object();
  for (const auto& [key, value] : config_entries(m.config)) cfg[key] = value;
  j["config"] = cfg;
  json inputs = json::object();
  for (const auto& [role, file] : m.inputs) {
    inputs[role] = {{"name", file.name}, {"sha256", file.sha256}};
  }
  j["inputs"] = inputs;
  if (m.seed) j["seed"] = *m.seed;
  if (m.train_fraction) j["train_fraction"] = *m.train_fraction;
  if (m.top_learners) j["top_learners"] = *m.top_learners;
  if (m.top_k_topics) j["top_k_topics"] = *m.top_k_topics;
  j["event_format"] = m.event_format;
  j["models"] = m.models;
  j["outputs"] = m.outputs;
  return j;
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.version = j.at("version").get<std::string>();
  for (const auto& [key, value] : j.at("config").items()) {
    try {
      apply_config_value(m.config, key, value.get<std::string>());
    } catch (const ConfigError& e) {
      throw DataError(std::string("report manifest: ") + e.what());
    }
  }
  for (const auto& [role, file] : j.at("inputs").items()) {
    m.inputs[role] = {file.at("name").get<std::string>(), file.at("sha256").get<std::string>()};
  }
  if (j.contains("seed")) m.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("train_fraction")) m.train_fraction = j["train_fraction"].get<double>();
  if (j.contains("top_learners")) m.top_learners = j["top_learners"].get<std::size_t>();
  if (j.contains("top_k_topics")) m.top_k_topics = j["top_k_topics"].get<std::size_t>();
  m.event_format = j.at("event_format").get<std::string>();
  m.models = j.at("models").get<std::vector<std::string>>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  return m;
}

// JSON has no infinities; the degenerate t statistics are written as text.
json real_or_text(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json ttest_to_json(const TTestResult& r) {
  return {{"t", real_or_text(r.t)},
          {"p", r.p},
          {"mean_difference", r.mean_difference},
          {"n", r.n}};
}

json run_to_json(const ModelRun& run) {
  json j;
  j["model"] = model_id(run.kind);
  j["algorithm"] = model_display_name(run.kind);
  if (run.kind == ModelKind::kSemanticTrueLearn) {
    j["sr_metric"] = metric_token(run.propagation.sr_metric);
    j["omega"] = run.propagation.omega.to_string();
    j["mixing_mode"] = mixing_mode_name(run.propagation.mixing);
    j["variance_source"] = variance_source_name(run.propagation.variance_source);
  }
  j["weighted"] = {{"precision", run.metrics.precision},
                   {"recall", run.metrics.recall},
                   {"f1", run.metrics.f1},
                   {"n_learners", run.metrics.n_learners},
                   {"n_events", run.metrics.n_events}};
  j["skipped_learners"] = run.skipped_learners;
  json learners = json::array();
  for (const auto& s : run.scores) {
    json p_engage = json::array();
    json predicted = json::array();
    json label = json::array();
    for (const auto& r : s.trace) {
      p_engage.push_back(r.prediction.p_engage);
      predicted.push_back(to_int(r.prediction.predicted));
      label.push_back(to_int(r.label));
    }
    learners.push_back({{"learner_id", s.learner_id},
                        {"n_events", s.n_events},
                        {"precision", s.precision},
                        {"recall", s.recall},
                        {"f1", s.f1},
                        {"trace", {{"p_engage", p_engage},
                                   {"predicted", predicted},
                                   {"label", label}}}});
  }
  j["learners"] = learners;
  return j;
}

Engagement engagement_from(int v) {
  if (v == 1) return Engagement::kEngaged;
  if (v == -1) return Engagement::kNotEngaged;
  throw DataError("report: engagement values must be 1 or -1");
}

ModelRun run_from_json(const json& j) {
  ModelRun run;
  const auto kind = parse_model_kind(j.at("model").get<std::string>());
  if (!kind) throw DataError("report: unknown model '" + j.at("model").get<std::string>() + "'");
  run.kind = *kind;
  if (run.kind == ModelKind::kSemanticTrueLearn) {
    const auto metric = parse_metric(j.at("sr_metric").get<std::string>());
    const auto omega = OmegaSize::parse(j.at("omega").get<std::string>());
    const auto mixing = parse_mixing_mode(j.at("mixing_mode").get<std::string>());
    const auto source = parse_variance_source(j.at("variance_source").get<std::string>());
    if (!metric || !omega || !mixing || !source) {
      throw DataError("report: bad propagation settings");
    }
    run.propagation = {*metric, *omega, *mixing, *source};
  }
  const auto& w = j.at("weighted");
  run.metrics = {w.at("precision").get<double>(), w.at("recall").get<double>(),
                 w.at("f1").get<double>(), w.at("n_learners").get<std::size_t>(),
                 w.at("n_events").get<std::size_t>()};
  run.skipped_learners = j.at("skipped_learners").get<std::size_t>();
  for (const auto& l : j.at("learners")) {
    LearnerScore s;
    s.learner_id = l.at("learner_id").get<std::string>();
    s.n_events = l.at("n_events").get<std::size_t>();
    s.precision = l.at("precision").get<double>();
    s.recall = l.at("recall").get<double>();
    s.f1 = l.at("f1").get<double>();
    const auto& t = l.at("trace");
    const auto p = t.at("p_engage").get<std::vector<double>>();
    const auto predicted = t.at("predicted").get<std::vector<int>>();
    const auto label = t.at("label").get<std::vector<int>>();
    if (p.size() != s.n_events || predicted.size() != s.n_events || label.size() != s.n_events) {
      throw DataError("report: trace of learner '" + s.learner_id + "' has the wrong length");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      s.trace.push_back({Prediction{p[i], engagement_from(predicted[i])}, engagement_from(label[i])});
    }
    run.scores.push_back(std::move(s));
  }
  return run;
}

std::vector<double> metric_column(const ModelRun& run, double LearnerScore::*field) {
  std::vector<double> out;
  out.reserve(run.scores.size());
  for (const auto& s : run.scores) out.push_back(s.*field);
  return out;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_escape(cells[i]);
  }
  return out + '\n';
}

}  // namespace

std::string RunManifest::canonical() const { return manifest_to_json(*this).dump(); }

std::string RunManifest::digest() const { return sha256_hex(canonical()); }

Comparison compare_runs(const ModelRun& baseline, const ModelRun& challenger) {
  if (baseline.scores.size() != challenger.scores.size()) {
    throw DataError("compared runs scored different numbers of learners");
  }
  for (std::size_t i = 0; i < baseline.scores.size(); ++i) {
    if (baseline.scores[i].learner_id != challenger.scores[i].learner_id) {
      throw DataError("compared runs scored different learners");
    }
  }
  if (baseline.scores.size() < 2) {
    throw DataError("a paired comparison needs at least 2 scored learners");
  }
  return {
      paired_t_test_one_tailed(metric_column(baseline, &LearnerScore::precision),
                               metric_column(challenger, &LearnerScore::precision)),
      paired_t_test_one_tailed(metric_column(baseline, &LearnerScore::recall),
                               metric_column(challenger, &LearnerScore::recall)),
      paired_t_test_one_tailed(metric_column(baseline, &LearnerScore::f1),
                               metric_column(challenger, &LearnerScore::f1)),
  };
}

std::string omega_label(OmegaSize omega) {
  if (omega.is_all()) return "All Related Topics";
  if (omega.k() == 1) return "Most Related Topic";
  return std::to_string(omega.k()) + " Most Related Topics";
}

std::string run_label(const ModelRun& run) {
  std::string label(model_display_name(run.kind));
  if (run.kind == ModelKind::kSemanticTrueLearn) {
    label += " (" + std::string(metric_display_name(run.propagation.sr_metric)) + ", " +
             omega_label(run.propagation.omega) + ")";
  }
  return label;
}

std::string report_to_json(const EvalReport& report) {
  json j;
  j["manifest"] = manifest_to_json(report.manifest);
  j["manifest_digest"] = report.manifest.digest();
  j["metadata"] = {{"metrics_split", "test"},
                   {"aggregation", "event-weighted mean of per-learner scores"},
                   {"positive_class", "engaged"}};
  json models = json::array();
  for (const auto& run : report.models) models.push_back(run_to_json(run));
  j["models"] = models;
  if (report.comparison) {
    j["comparison"] = {{"baseline", model_id(report.models.at(0).kind)},
                       {"challenger", model_id(report.models.at(1).kind)},
                       {"test", "paired one-tailed t, alternative: challenger > baseline"},
                       {"precision", ttest_to_json(report.comparison->precision)},
                       {"recall", ttest_to_json(report.comparison->recall)},
                       {"f1", ttest_to_json(report.comparison->f1)}};
  }
  return j.dump(1) + "\n";
}

EvalReport report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    EvalReport report;
    report.manifest = manifest_from_json(j.at("manifest"));
    const auto stored = j.at("manifest_digest").get<std::string>();
    if (sha256_hex(j.at("manifest").dump()) != stored) {
      throw DataError("report manifest does not match its digest");
    }
    for (const auto& m : j.at("models")) report.models.push_back(run_from_json(m));
    if (j.contains("comparison") && report.models.size() >= 2) {
      report.comparison = compare_runs(report.models[0], report.models[1]);
    }
    return report;
  } catch (const json::exception& e) {
    throw DataError(std::string("report is missing fields: ") + e.what());
  }
}

std::string manifest_line(const RunManifest& manifest) {
  return "# manifest: " + manifest.digest() + "\n";
}

std::string summary_csv(const EvalReport& report) {
  std::string out = manifest_line(report.manifest);
  std::vector<std::string> header = {"Algorithm", "SR Metric", "Omega", "Prec.", "Rec.", "F1"};
  if (report.comparison) {
    header.insert(header.end(), {"p (Prec.)", "p (Rec.)", "p (F1)"});
  }
  out += csv_row(header);
  for (std::size_t i = 0; i < report.models.size(); ++i) {
    const auto& run = report.models[i];
    const bool semantic = run.kind == ModelKind::kSemanticTrueLearn;
    std::vector<std::string> row = {
        std::string(model_display_name(run.kind)),
        semantic ? std::string(metric_display_name(run.propagation.sr_metric)) : "-",
        semantic ? omega_label(run.propagation.omega) : "-",
        format_real(run.metrics.precision),
        format_real(run.metrics.recall),
        format_real(run.metrics.f1)};
    if (report.comparison) {
      if (i == 1) {
        row.insert(row.end(), {format_real(report.comparison->precision.p),
                               format_real(report.comparison->recall.p),
                               format_real(report.comparison->f1.p)});
      } else {
        row.insert(row.end(), {"", "", ""});
      }
    }
    out += csv_row(row);
  }
  return out;
}

std::string recall_by_event_csv(const RunManifest& manifest,
                                const std::vector<std::string>& labels,
                                const std::vector<std::vector<RecallPoint>>& series) {
  std::string out = manifest_line(manifest);
  out += "# recall at n: cumulative over each learner's first n events, "
         "averaged over learners with at least n events\n";
  std::vector<std::string> header = {"n"};
  for (const auto& l : labels) {
    header.push_back(l + " mean recall");
    header.push_back(l + " learners");
  }
  out += csv_row(header);
  std::size_t length = 0;
  for (const auto& s : series) length = std::max(length, s.size());
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<std::string> row = {std::to_string(i + 1)};
    for (const auto& s : series) {
      if (i < s.size()) {
        row.push_back(format_real(s[i].mean_recall));
        row.push_back(std::to_string(s[i].n_learners));
      } else {
        row.insert(row.end(), {"", ""});
      }
    }
    out += csv_row(row);
  }
  return out;
}

std::string srocc_csv(const RunManifest& manifest, const std::vector<std::string>& labels,
                      const std::vector<std::vector<FeatureCorrelation>>& columns) {
  std::string out = manifest_line(manifest);
  out += "# Spearman rho against per-learner recall, shown where two-sided p < 0.01; "
         "features from full sessions\n";
  std::vector<std::string> header = {"Feature"};
  header.insert(header.end(), labels.begin(), labels.end());
  out += csv_row(header);
  for (std::size_t f = 0; f < kFeatureNames.size(); ++f) {
    std::vector<std::string> row = {std::string(kFeatureNames[f])};
    for (const auto& col : columns) {
      const auto& c = col.at(f);
      row.push_back(c.significant ? format_real(c.result->rho) : "");
    }
    out += csv_row(row);
  }
  return out;
}

std::string features_csv(const RunManifest& manifest, const std::vector<std::string>& labels,
                         const std::vector<std::vector<LearnerFeatures>>& runs) {
  std::string out = manifest_line(manifest);
  out += "# topic-graph features computed on each learner's full session\n";
  std::vector<std::string> header = {"learner_id"};
  for (auto name : kFeatureNames) header.emplace_back(name);
  for (const auto& l : labels) header.push_back(l + " recall");
  out += csv_row(header);
  if (runs.empty()) return out;
  for (std::size_t i = 0; i < runs[0].size(); ++i) {
    const auto& row = runs[0][i];
    std::vector<std::string> cells = {row.learner_id};
    for (auto name : kFeatureNames) cells.push_back(format_real(feature_value(row, name)));
    for (const auto& run : runs) cells.push_back(format_real(run.at(i).recall));
    out += csv_row(cells);
  }
  return out;
}

}  // namespace truelearn
