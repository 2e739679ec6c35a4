#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "truelearn/dataset.hpp"
#include "truelearn/novel.hpp"

namespace truelearn {

/// Binary confusion counts with engaged (+1) as the positive class.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
};

ConfusionCounts count_confusion(std::span<const PredictionRecord> trace);

/// Zero-denominator conventions: precision is 0 without positive predictions,
/// recall is 0 without positive labels and F1 is 0 when P + R = 0.
double precision_of(const ConfusionCounts& c);
double recall_of(const ConfusionCounts& c);
double f1_of(double precision, double recall);

struct LearnerScore {
  LearnerId learner_id;
  std::size_t n_events = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<PredictionRecord> trace;
};

/// Throws std::invalid_argument on an empty trace.
LearnerScore score_learner(LearnerId learner_id, std::vector<PredictionRecord> trace);

struct WeightedMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t n_learners = 0;
  std::size_t n_events = 0;
};

/// Event-count weighted means of the per-learner metrics (F1 is averaged,
/// not recomputed from pooled counts). Throws on an empty input.
WeightedMetrics aggregate(std::span<const LearnerScore> scores);

struct RecallPoint {
  std::size_t n = 0;             ///< event count, 1-based
  double mean_recall = 0.0;      ///< mean cumulative recall over events 1..n
  std::size_t n_learners = 0;    ///< learners with at least n events
};

/// Mean cumulative recall at each event count 1..max_n, over learners whose
/// sessions reach n. Stops early once no learner reaches n.
std::vector<RecallPoint> recall_by_event_index(std::span<const LearnerScore> scores,
                                               std::size_t max_n);

}  // namespace truelearn
