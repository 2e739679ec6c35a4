#include "truelearn/semantic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "truelearn/text.hpp"

namespace truelearn {

std::string_view mixing_mode_name(MixingMode mode) {
  return mode == MixingMode::kSemanticRelatedness ? "semantic_relatedness"
                                                  : "inverse_standard_error";
}

std::optional<MixingMode> parse_mixing_mode(std::string_view text) {
  const auto t = to_lower(trim(text));
  if (t == "semantic_relatedness") return MixingMode::kSemanticRelatedness;
  if (t == "inverse_standard_error") return MixingMode::kInverseStandardError;
  return std::nullopt;
}

std::string_view variance_source_name(VarianceSource source) {
  return source == VarianceSource::kSourceTopic ? "source_topic" : "fixed_beta";
}

std::optional<VarianceSource> parse_variance_source(std::string_view text) {
  const auto t = to_lower(trim(text));
  if (t == "source_topic") return VarianceSource::kSourceTopic;
  if (t == "fixed_beta") return VarianceSource::kFixedBeta;
  return std::nullopt;
}

Gaussian1D propagate_prior(const LearnerModel& model, TopicId target, const SRTable& table,
                           const PropagationConfig& cfg, const ModelConfig& base) {
  const auto omega = related_seen_topics(table, target, model.topics_seen, cfg.omega);
  if (omega.empty()) return default_prior(base);

  std::vector<double> weights(omega.size());
  if (cfg.mixing == MixingMode::kSemanticRelatedness) {
    const double inv_size = 1.0 / static_cast<double>(omega.size());
    for (std::size_t j = 0; j < omega.size(); ++j) weights[j] = inv_size * omega[j].relatedness;
  } else {
    double total = 0.0;
    for (std::size_t j = 0; j < omega.size(); ++j) {
      weights[j] = 1.0 / std::sqrt(model.skills.at(omega[j].topic).variance());
      total += weights[j];
    }
    for (auto& w : weights) w /= total;
  }

  double mean = 0.0;
  double variance = 0.0;
  for (std::size_t j = 0; j < omega.size(); ++j) {
    const auto& skill = model.skills.at(omega[j].topic);
    const double source_var =
        cfg.variance_source == VarianceSource::kSourceTopic ? skill.variance() : base.beta;
    mean += weights[j] * skill.mean();
    variance += weights[j] * weights[j] * source_var;
  }
  // Tiny relatedness values can underflow the squared weights.
  return Gaussian1D::from_moments(mean, std::max(variance, std::numeric_limits<double>::min()));
}

Prediction semantic_predict_update(LearnerModel& model, const EngagementEvent& event,
                                   const SRTable& table, const ModelConfig& base,
                                   const PropagationConfig& cfg) {
  const SemanticPropagator propagator(table, cfg, base);
  const auto beliefs = event_beliefs(model, event, base, &propagator);
  const auto prediction = predict_from_beliefs(beliefs, event, base);
  update_from_beliefs(model, beliefs, event, base);
  return prediction;
}

}  // namespace truelearn
