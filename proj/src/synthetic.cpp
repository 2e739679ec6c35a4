#include "truelearn/synthetic.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

namespace truelearn {

namespace {

// Explicit transforms of the raw 64-bit stream; the standard distributions
// are implementation-defined.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t below(std::size_t bound) {
    const std::uint64_t b = bound;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % b;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::size_t>(x % b);
  }

  // Box-Muller, one draw per call.
  double normal() {
    double u = uniform();
    while (u == 0.0) u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * 3.14159265358979323846 * v);
  }

 private:
  std::mt19937_64 engine_;
};

// k distinct values from [0, n), in draw order.
std::vector<std::size_t> sample_distinct(PortableRng& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  pool.resize(k);
  return pool;
}

void check(const SyntheticCohortConfig& cfg) {
  if (cfg.n_clusters == 0 || cfg.topics_per_cluster == 0 || cfg.n_learners == 0) {
    throw std::invalid_argument("synthetic cohort needs learners, clusters and topics");
  }
  if (cfg.min_events == 0 || cfg.min_events > cfg.max_events) {
    throw std::invalid_argument("synthetic cohort needs 1 <= min_events <= max_events");
  }
  if (cfg.max_topics_per_event == 0 || cfg.max_topics_per_event > kMaxTopicsPerEvent ||
      cfg.max_topics_per_event > cfg.topics_per_cluster) {
    throw std::invalid_argument("max_topics_per_event out of range");
  }
  if (cfg.clusters_per_learner == 0 || cfg.clusters_per_learner > cfg.n_clusters) {
    throw std::invalid_argument("clusters_per_learner out of range");
  }
  if (!(0.0 < cfg.min_relatedness && cfg.min_relatedness <= cfg.max_relatedness &&
        cfg.max_relatedness <= 1.0)) {
    throw std::invalid_argument("relatedness range must lie in (0, 1]");
  }
  if (!(0.0 <= cfg.min_depth && cfg.min_depth <= cfg.max_depth && cfg.max_depth <= 1.0)) {
    throw std::invalid_argument("depth range must lie in [0, 1]");
  }
  cfg.truth.validate();
}

}  // namespace

SyntheticCohort generate_cohort(const SyntheticCohortConfig& cfg) {
  check(cfg);
  PortableRng rng(cfg.seed);
  SyntheticCohort out;
  const auto topic_id = [&](std::size_t cluster, std::size_t i) {
    return static_cast<TopicId>(1000 * (cluster + 1) + i);
  };

  for (std::size_t c = 0; c < cfg.n_clusters; ++c) {
    for (std::size_t i = 0; i < cfg.topics_per_cluster; ++i) {
      for (std::size_t j = i + 1; j < cfg.topics_per_cluster; ++j) {
        out.table.set(topic_id(c, i), topic_id(c, j),
                      rng.uniform(cfg.min_relatedness, cfg.max_relatedness));
      }
    }
  }

  const std::size_t width = std::to_string(cfg.n_learners - 1).size();
  for (std::size_t l = 0; l < cfg.n_learners; ++l) {
    std::string id = std::to_string(l);
    id = "learner_" + std::string(width - id.size(), '0') + id;

    const auto clusters = sample_distinct(rng, cfg.n_clusters, cfg.clusters_per_learner);
    std::map<TopicId, double> skill;
    for (std::size_t c : clusters) {
      const double cluster_skill = cfg.cluster_skill_sd * rng.normal();
      for (std::size_t i = 0; i < cfg.topics_per_cluster; ++i) {
        skill[topic_id(c, i)] = cluster_skill + cfg.topic_skill_sd * rng.normal();
      }
    }

    const std::size_t n_events =
        cfg.min_events + rng.below(cfg.max_events - cfg.min_events + 1);
    Session session;
    for (std::size_t e = 0; e < n_events; ++e) {
      const std::size_t c = clusters[rng.below(clusters.size())];
      const std::size_t k = 1 + rng.below(cfg.max_topics_per_event);
      EngagementEvent ev;
      ev.learner_id = id;
      ev.order_index = static_cast<std::int64_t>(e);
      double mean_d = 0.0;
      double depth_sq = 0.0;
      for (std::size_t i : sample_distinct(rng, cfg.topics_per_cluster, k)) {
        const TopicId t = topic_id(c, i);
        const double d = rng.uniform(cfg.min_depth, cfg.max_depth);
        ev.topics.push_back({t, d});
        mean_d += d * (skill.at(t) - cfg.truth.depth_skill_level);
        depth_sq += d * d;
      }
      const double diff = mean_d + std::sqrt(2.0 * cfg.truth.perf_beta * depth_sq) * rng.normal();
      ev.label = std::abs(diff) <= cfg.truth.draw_margin ? Engagement::kEngaged
                                                         : Engagement::kNotEngaged;
      session.push_back(std::move(ev));
    }
    out.dataset.learners[id] = std::move(session);
    out.dataset.split[id] = Split::kTest;
  }
  return out;
}

}  // namespace truelearn
