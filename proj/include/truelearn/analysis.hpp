#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "truelearn/dataset.hpp"
#include "truelearn/metrics.hpp"
#include "truelearn/sr_table.hpp"
#include "truelearn/stats.hpp"

namespace truelearn {

/// Behavioural and topic-graph features of one learner's session.
struct LearnerFeatures {
  LearnerId learner_id;
  std::size_t n_events = 0;
  std::size_t n_unique_topics = 0;
  double topic_sparsity_rate = 0.0;
  double positive_label_rate = 0.0;
  double avg_connectedness = 0.0;
  std::size_t min_cut_set_size = 0;
  double recall = 0.0;
};

inline constexpr std::array<std::string_view, 6> kFeatureNames = {
    "n_events",          "n_unique_topics",   "topic_sparsity_rate",
    "positive_label_rate", "avg_connectedness", "min_cut_set_size"};

/// 1 - unique topics / total topic slots over the session's events.
double topic_sparsity_rate(const Session& session);

/// Features of `session`; `recall` is left at 0.
LearnerFeatures learner_features(LearnerId learner_id, const Session& session,
                                 const SRTable& table, double edge_threshold = 0.0);

/// One row per scored learner, with that learner's recall. Throws DataError
/// when a learner is missing from `dataset` or its trace length differs from
/// the session length.
std::vector<LearnerFeatures> learner_feature_table(const Dataset& dataset,
                                               std::span<const LearnerScore> scores,
                                               const SRTable& table, double edge_threshold = 0.0);

/// Value of the named feature (one of kFeatureNames).
double feature_value(const LearnerFeatures& row, std::string_view feature);

struct FeatureCorrelation {
  std::string_view feature;
  std::optional<SpearmanResult> result;  ///< nullopt when a column is constant
  bool significant = false;              ///< p < alpha
};

/// SROCC of each feature against the rows' recall.
std::vector<FeatureCorrelation> feature_recall_correlations(std::span<const LearnerFeatures> rows,
                                                            double alpha = 0.01);

}  // namespace truelearn
