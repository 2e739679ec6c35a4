#include "truelearn/novel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace truelearn {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Keeps posterior variances strictly positive when the noise term is tiny
// relative to a skill's variance.
constexpr double kMinVarianceFactor = 1e-12;

struct TeamDifference {
  double mean = 0.0;
  double variance = 0.0;
};

TeamDifference team_difference(std::span<const Gaussian1D> beliefs, const EngagementEvent& event,
                               const ModelConfig& cfg) {
  TeamDifference diff;
  for (std::size_t k = 0; k < beliefs.size(); ++k) {
    const double d = event.topics[k].depth;
    diff.mean += d * (beliefs[k].mean() - cfg.depth_skill_level);
    diff.variance += d * d * (beliefs[k].variance() + 2.0 * cfg.perf_beta);
  }
  return diff;
}

void check_aligned(std::span<const Gaussian1D> beliefs, const EngagementEvent& event) {
  if (beliefs.size() != event.topics.size()) {
    throw std::invalid_argument("one belief per event topic is required");
  }
}

}  // namespace

void ModelConfig::validate() const {
  const auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(beta)) throw std::invalid_argument("beta must be positive");
  if (!positive(perf_beta)) throw std::invalid_argument("perf_beta must be positive");
  if (!positive(draw_margin)) throw std::invalid_argument("draw_margin must be positive");
  if (!std::isfinite(dynamics_tau) || dynamics_tau < 0.0) {
    throw std::invalid_argument("dynamics_tau must be non-negative");
  }
  if (!(decision_threshold > 0.0 && decision_threshold < 1.0)) {
    throw std::invalid_argument("decision_threshold must lie in (0, 1)");
  }
  if (!std::isfinite(depth_skill_level)) {
    throw std::invalid_argument("depth_skill_level must be finite");
  }
}

Gaussian1D default_prior(const ModelConfig& cfg) { return Gaussian1D::from_moments(0.0, cfg.beta); }

std::vector<Gaussian1D> event_beliefs(const LearnerModel& model, const EngagementEvent& event,
                                      const ModelConfig& cfg, const PriorProvider* provider) {
  std::vector<Gaussian1D> beliefs;
  beliefs.reserve(event.topics.size());
  for (const auto& tc : event.topics) {
    if (auto it = model.skills.find(tc.topic); it != model.skills.end()) {
      beliefs.push_back(it->second);
    } else if (provider != nullptr && !model.has_seen(tc.topic)) {
      beliefs.push_back(provider->prior(model, tc.topic));
    } else {
      beliefs.push_back(default_prior(cfg));
    }
  }
  return beliefs;
}

Prediction predict_from_beliefs(std::span<const Gaussian1D> beliefs, const EngagementEvent& event,
                                const ModelConfig& cfg) {
  check_aligned(beliefs, event);
  const auto diff = team_difference(beliefs, event, cfg);
  const double eps = cfg.draw_margin;
  double p = 0.0;
  if (diff.variance > 0.0) {
    const double sd = std::sqrt(diff.variance);
    const double hi = (eps - diff.mean) / sd;
    const double lo = (-eps - diff.mean) / sd;
    p = 0.5 * (std::erf(hi * kInvSqrt2) - std::erf(lo * kInvSqrt2));
  } else {
    // All depths are zero: D is exactly its mean.
    p = std::abs(diff.mean) <= eps ? 1.0 : 0.0;
  }
  p = std::clamp(p, 0.0, 1.0);
  return {p, p >= cfg.decision_threshold ? Engagement::kEngaged : Engagement::kNotEngaged};
}

void update_from_beliefs(LearnerModel& model, std::span<const Gaussian1D> beliefs,
                         const EngagementEvent& event, const ModelConfig& cfg) {
  check_aligned(beliefs, event);
  const double tau2 = cfg.dynamics_tau * cfg.dynamics_tau;
  std::vector<Gaussian1D> inflated;
  inflated.reserve(beliefs.size());
  for (const auto& b : beliefs) {
    inflated.push_back(tau2 > 0.0 ? Gaussian1D::from_moments(b.mean(), b.variance() + tau2) : b);
  }

  const auto diff = team_difference(inflated, event, cfg);
  if (diff.variance > 0.0) {
    const double c = std::sqrt(diff.variance);
    const double t = diff.mean / c;
    const double eps = cfg.draw_margin / c;
    TruncationMoments moments;
    double direction = 1.0;
    if (event.label == Engagement::kEngaged) {
      moments = truncated_moments_within(t, eps);
    } else if (diff.mean >= 0.0) {
      moments = truncated_moments_above(t, eps);
    } else {
      moments = truncated_moments_above(-t, eps);
      direction = -1.0;
    }
    for (std::size_t k = 0; k < inflated.size(); ++k) {
      const double d = event.topics[k].depth;
      if (d == 0.0) continue;
      const double var = inflated[k].variance();
      const double mean = inflated[k].mean() + direction * d * var / c * moments.v;
      const double factor =
          std::max(1.0 - moments.w * d * d * var / diff.variance, kMinVarianceFactor);
      inflated[k] = Gaussian1D::from_moments(mean, var * factor);
    }
  }

  for (std::size_t k = 0; k < inflated.size(); ++k) {
    const TopicId topic = event.topics[k].topic;
    model.skills.insert_or_assign(topic, inflated[k]);
    model.topics_seen.insert(topic);
  }
  ++model.events_seen;
}

Prediction predict(const LearnerModel& model, const EngagementEvent& event,
                   const ModelConfig& cfg) {
  return predict_from_beliefs(event_beliefs(model, event, cfg), event, cfg);
}

void update(LearnerModel& model, const EngagementEvent& event, const ModelConfig& cfg) {
  update_from_beliefs(model, event_beliefs(model, event, cfg), event, cfg);
}

std::vector<PredictionRecord> replay_session(std::span<const EngagementEvent> events,
                                             const ModelConfig& cfg,
                                             const PriorProvider* provider,
                                             LearnerModel* final_state) {
  LearnerModel model;
  std::vector<PredictionRecord> trace;
  trace.reserve(events.size());
  for (const auto& event : events) {
    const auto beliefs = event_beliefs(model, event, cfg, provider);
    trace.push_back({predict_from_beliefs(beliefs, event, cfg), event.label});
    update_from_beliefs(model, beliefs, event, cfg);
  }
  if (final_state != nullptr) *final_state = std::move(model);
  return trace;
}

}  // namespace truelearn
