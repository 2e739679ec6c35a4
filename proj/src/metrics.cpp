#include "truelearn/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace truelearn {

ConfusionCounts count_confusion(std::span<const PredictionRecord> trace) {
  ConfusionCounts c;
  for (const auto& r : trace) {
    const bool predicted = r.prediction.predicted == Engagement::kEngaged;
    const bool actual = r.label == Engagement::kEngaged;
    if (predicted && actual) {
      ++c.tp;
    } else if (predicted) {
      ++c.fp;
    } else if (actual) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return c;
}

double precision_of(const ConfusionCounts& c) {
  const auto denom = c.tp + c.fp;
  return denom == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double recall_of(const ConfusionCounts& c) {
  const auto denom = c.tp + c.fn;
  return denom == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double f1_of(double precision, double recall) {
  const double sum = precision + recall;
  return sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum;
}

LearnerScore score_learner(LearnerId learner_id, std::vector<PredictionRecord> trace) {
  if (trace.empty()) throw std::invalid_argument("cannot score an empty trace");
  const auto counts = count_confusion(trace);
  LearnerScore s;
  s.learner_id = std::move(learner_id);
  s.n_events = trace.size();
  s.precision = precision_of(counts);
  s.recall = recall_of(counts);
  s.f1 = f1_of(s.precision, s.recall);
  s.trace = std::move(trace);
  return s;
}

WeightedMetrics aggregate(std::span<const LearnerScore> scores) {
  if (scores.empty()) throw std::invalid_argument("aggregate needs at least one learner");
  // Summing in learner-id order makes the result independent of input order.
  std::vector<const LearnerScore*> ordered;
  ordered.reserve(scores.size());
  for (const auto& s : scores) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(), [](const LearnerScore* a, const LearnerScore* b) {
    return std::tie(a->learner_id, a->n_events, a->precision, a->recall, a->f1) <
           std::tie(b->learner_id, b->n_events, b->precision, b->recall, b->f1);
  });
  WeightedMetrics m;
  for (const auto& s : scores) m.n_events += s.n_events;
  if (m.n_events == 0) throw std::invalid_argument("aggregate needs at least one event");
  const double total = static_cast<double>(m.n_events);
  for (const auto* sp : ordered) {
    const auto& s = *sp;
    const double n = static_cast<double>(s.n_events);
    m.precision += n * s.precision;
    m.recall += n * s.recall;
    m.f1 += n * s.f1;
  }
  m.precision /= total;
  m.recall /= total;
  m.f1 /= total;
  m.n_learners = scores.size();
  return m;
}

std::vector<RecallPoint> recall_by_event_index(std::span<const LearnerScore> scores,
                                               std::size_t max_n) {
  if (max_n == 0) throw std::invalid_argument("max_n must be at least 1");
  std::vector<RecallPoint> series;
  std::vector<ConfusionCounts> running(scores.size());
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a].learner_id < scores[b].learner_id;
  });
  for (std::size_t n = 1; n <= max_n; ++n) {
    RecallPoint point{n, 0.0, 0};
    for (std::size_t i : order) {
      const auto& trace = scores[i].trace;
      if (trace.size() < n) continue;
      const auto& r = trace[n - 1];
      auto& c = running[i];
      const bool predicted = r.prediction.predicted == Engagement::kEngaged;
      if (r.label == Engagement::kEngaged) {
        predicted ? ++c.tp : ++c.fn;
      } else {
        predicted ? ++c.fp : ++c.tn;
      }
      point.mean_recall += recall_of(c);
      ++point.n_learners;
    }
    if (point.n_learners == 0) break;
    point.mean_recall /= static_cast<double>(point.n_learners);
    series.push_back(point);
  }
  return series;
}

}  // namespace truelearn
