#include "truelearn/analysis.hpp"

#include <set>
#include <stdexcept>

#include "truelearn/topic_graph.hpp"

namespace truelearn {

double topic_sparsity_rate(const Session& session) {
  std::set<TopicId> unique;
  std::size_t slots = 0;
  for (const auto& ev : session) {
    slots += ev.topics.size();
    for (const auto& tc : ev.topics) unique.insert(tc.topic);
  }
  if (slots == 0) return 0.0;
  return 1.0 - static_cast<double>(unique.size()) / static_cast<double>(slots);
}

LearnerFeatures learner_features(LearnerId learner_id, const Session& session,
                                 const SRTable& table, double edge_threshold) {
  LearnerFeatures f;
  f.learner_id = std::move(learner_id);
  f.n_events = session.size();
  std::size_t positives = 0;
  for (const auto& ev : session) {
    if (ev.label == Engagement::kEngaged) ++positives;
  }
  f.positive_label_rate =
      session.empty() ? 0.0 : static_cast<double>(positives) / static_cast<double>(session.size());
  f.topic_sparsity_rate = topic_sparsity_rate(session);
  const auto graph = build_topic_graph(table, session, edge_threshold);
  f.n_unique_topics = graph.num_nodes();
  f.avg_connectedness = avg_connectedness(graph);
  f.min_cut_set_size = min_cut_set_size(graph);
  return f;
}

std::vector<LearnerFeatures> learner_feature_table(const Dataset& dataset,
                                               std::span<const LearnerScore> scores,
                                               const SRTable& table, double edge_threshold) {
  std::vector<LearnerFeatures> rows;
  rows.reserve(scores.size());
  for (const auto& score : scores) {
    auto it = dataset.learners.find(score.learner_id);
    if (it == dataset.learners.end()) {
      throw DataError("learner '" + score.learner_id + "' is not in the dataset");
    }
    if (it->second.size() != score.trace.size()) {
      throw DataError("trace of learner '" + score.learner_id +
                      "' does not match the session length");
    }
    auto row = learner_features(score.learner_id, it->second, table, edge_threshold);
    row.recall = score.recall;
    rows.push_back(std::move(row));
  }
  return rows;
}

double feature_value(const LearnerFeatures& row, std::string_view feature) {
  if (feature == "n_events") return static_cast<double>(row.n_events);
  if (feature == "n_unique_topics") return static_cast<double>(row.n_unique_topics);
  if (feature == "topic_sparsity_rate") return row.topic_sparsity_rate;
  if (feature == "positive_label_rate") return row.positive_label_rate;
  if (feature == "avg_connectedness") return row.avg_connectedness;
  if (feature == "min_cut_set_size") return static_cast<double>(row.min_cut_set_size);
  throw std::invalid_argument("unknown feature " + std::string(feature));
}

std::vector<FeatureCorrelation> feature_recall_correlations(std::span<const LearnerFeatures> rows,
                                                            double alpha) {
  std::vector<double> recall;
  recall.reserve(rows.size());
  for (const auto& r : rows) recall.push_back(r.recall);

  std::vector<FeatureCorrelation> out;
  for (auto name : kFeatureNames) {
    std::vector<double> column;
    column.reserve(rows.size());
    for (const auto& r : rows) column.push_back(feature_value(r, name));
    FeatureCorrelation fc{name, std::nullopt, false};
    if (rows.size() >= 3) {
      fc.result = srocc(column, recall);
      fc.significant = fc.result && fc.result->p < alpha;
    }
    out.push_back(fc);
  }
  return out;
}

}  // namespace truelearn
