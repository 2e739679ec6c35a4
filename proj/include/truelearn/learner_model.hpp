#pragma once

#include <cstdint>
#include <map>
#include <set>

#include "truelearn/dataset.hpp"
#include "truelearn/gaussian.hpp"

namespace truelearn {

/// Per-learner skill state. Topics absent from `skills` still carry the
/// configured default prior; they are materialized on first update.
struct LearnerModel {
  std::map<TopicId, Gaussian1D> skills;
  std::int64_t events_seen = 0;
  std::set<TopicId> topics_seen;

  bool has_seen(TopicId topic) const { return topics_seen.contains(topic); }

  friend bool operator==(const LearnerModel&, const LearnerModel&) = default;
};

}  // namespace truelearn
