#pragma once

#include <span>
#include <vector>

#include "truelearn/dataset.hpp"
#include "truelearn/gaussian.hpp"
#include "truelearn/learner_model.hpp"

namespace truelearn {

/// Hyperparameters of the baseline engagement model.
///
/// Engagement is read as a draw between the learner and the resource: with
/// depths d_k over the event's topics, the performance difference is
///
///   D = sum_k d_k (s_k - depth_skill_level) + noise,
///   noise ~ N(0, 2 * perf_beta * sum_k d_k^2)   (perf_beta per side),
///
/// and the learner engages iff |D| <= draw_margin.
struct ModelConfig {
  double beta = 0.5;                ///< prior skill variance of unseen topics
  double perf_beta = 0.5;           ///< performance noise variance per side
  double draw_margin = 0.3;         ///< half-width of the engagement region
  double dynamics_tau = 0.0;        ///< std-dev added to a skill before each update
  double decision_threshold = 0.5;  ///< predict engaged iff p_engage >= threshold
  double depth_skill_level = 0.0;   ///< skill level a resource demands per unit depth

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// N(0, beta).
Gaussian1D default_prior(const ModelConfig& cfg);

struct Prediction {
  double p_engage = 0.0;
  Engagement predicted = Engagement::kNotEngaged;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

struct PredictionRecord {
  Prediction prediction;
  Engagement label = Engagement::kNotEngaged;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Source of beliefs for topics the learner has not seen yet.
class PriorProvider {
 public:
  virtual ~PriorProvider() = default;
  virtual Gaussian1D prior(const LearnerModel& model, TopicId topic) const = 0;
};

/// Current beliefs for each topic of `event`, in event order. Seen topics
/// come from `model`; unseen ones from `provider`, or the default prior.
std::vector<Gaussian1D> event_beliefs(const LearnerModel& model, const EngagementEvent& event,
                                      const ModelConfig& cfg,
                                      const PriorProvider* provider = nullptr);

/// Probability that |D| <= draw_margin under `beliefs` (one per event topic).
Prediction predict_from_beliefs(std::span<const Gaussian1D> beliefs, const EngagementEvent& event,
                                const ModelConfig& cfg);

/// Conditions the event's skills on the observed label, starting from
/// `beliefs`, and writes the posteriors into `model`.
///
/// Engaged conditions on |D| <= eps. Not engaged conditions on the side of
/// the draw region the expected difference lies on (D > eps when E[D] >= 0,
/// else D < -eps). Each skill receives the team correction in proportion to
/// d_k * var_k / var_D.
void update_from_beliefs(LearnerModel& model, std::span<const Gaussian1D> beliefs,
                         const EngagementEvent& event, const ModelConfig& cfg);

Prediction predict(const LearnerModel& model, const EngagementEvent& event,
                   const ModelConfig& cfg);
void update(LearnerModel& model, const EngagementEvent& event, const ModelConfig& cfg);

/// Sequential predict-then-update over a session sorted by order_index.
/// The prediction for event t only sees events before t.
std::vector<PredictionRecord> replay_session(std::span<const EngagementEvent> events,
                                             const ModelConfig& cfg,
                                             const PriorProvider* provider = nullptr,
                                             LearnerModel* final_state = nullptr);

}  // namespace truelearn
