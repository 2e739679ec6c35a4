#pragma once

// Synthetic learner cohorts with a known topic-relatedness structure.
//
// Topics are grouped into clusters. Within a cluster every pair of topics is
// related (rho drawn from [min_relatedness, max_relatedness]); across
// clusters nothing is. A learner's latent skill on a topic is its cluster
// skill plus a small topic-specific offset, so skills are correlated exactly
// along the edges of the relatedness graph. Labels follow the draw model of
// the baseline with the learner's true skills.

#include <cstddef>
#include <cstdint>

#include "truelearn/dataset.hpp"
#include "truelearn/novel.hpp"
#include "truelearn/sr_table.hpp"

namespace truelearn {

struct SyntheticCohortConfig {
  std::size_t n_learners = 500;
  std::size_t n_clusters = 40;
  std::size_t topics_per_cluster = 12;
  double min_relatedness = 0.5;
  double max_relatedness = 0.95;
  std::size_t min_events = 10;
  std::size_t max_events = 40;
  std::size_t max_topics_per_event = 2;
  std::size_t clusters_per_learner = 3;
  double cluster_skill_sd = 1.0;   ///< spread of cluster-level skills
  double topic_skill_sd = 0.15;    ///< topic offset around the cluster skill
  double min_depth = 0.1;
  double max_depth = 0.9;
  ModelConfig truth;               ///< draw model used to generate labels
  std::uint64_t seed = 1;
};

struct SyntheticCohort {
  Dataset dataset;
  SRTable table{SRMetric::kW2V};
};

/// Deterministic for a fixed config on every platform (only the
/// standardized mt19937_64 stream is used, with explicit transforms).
SyntheticCohort generate_cohort(const SyntheticCohortConfig& cfg);

}  // namespace truelearn
