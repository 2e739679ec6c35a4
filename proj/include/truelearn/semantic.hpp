#pragma once

#include "truelearn/gaussian.hpp"
#include "truelearn/learner_model.hpp"
#include "truelearn/novel.hpp"
#include "truelearn/sr_table.hpp"

namespace truelearn {

/// How the related topics are weighted when building a prior.
enum class MixingMode {
  /// weight_j = rho_ij / |Omega|
  kSemanticRelatedness,
  /// weight_j = (1 / sigma_j) / sum_k (1 / sigma_k); rho only selects Omega.
  kInverseStandardError,
};

/// Which variance enters each term of the propagated variance.
enum class VarianceSource {
  kSourceTopic,  ///< sigma_j^2 of the related seen topic
  kFixedBeta,    ///< the prior variance beta, for sensitivity analysis
};

struct PropagationConfig {
  SRMetric sr_metric = SRMetric::kW2V;
  OmegaSize omega = OmegaSize::all();
  MixingMode mixing = MixingMode::kSemanticRelatedness;
  VarianceSource variance_source = VarianceSource::kSourceTopic;

  friend bool operator==(const PropagationConfig&, const PropagationConfig&) = default;
};

std::string_view mixing_mode_name(MixingMode mode);
std::optional<MixingMode> parse_mixing_mode(std::string_view text);
std::string_view variance_source_name(VarianceSource source);
std::optional<VarianceSource> parse_variance_source(std::string_view text);

/// Prior for a topic the learner has never seen, combined from its most
/// related seen topics Omega:
///
///   mean     = sum_{j in Omega} w_j mu_j
///   variance = sum_{j in Omega} w_j^2 sigma_j^2
///
/// i.e. the exact distribution of sum_j w_j theta_j for independent
/// Gaussian skills theta_j. An empty Omega gives default_prior(base).
Gaussian1D propagate_prior(const LearnerModel& model, TopicId target, const SRTable& table,
                           const PropagationConfig& cfg, const ModelConfig& base);

/// PriorProvider that propagates beliefs across the relatedness table.
class SemanticPropagator final : public PriorProvider {
 public:
  SemanticPropagator(const SRTable& table, PropagationConfig cfg, ModelConfig base)
      : table_(table), cfg_(cfg), base_(base) {}

  Gaussian1D prior(const LearnerModel& model, TopicId topic) const override {
    return propagate_prior(model, topic, table_, cfg_, base_);
  }

 private:
  const SRTable& table_;
  PropagationConfig cfg_;
  ModelConfig base_;
};

/// One predict-then-update step with propagated priors for first-seen topics.
/// Topics already seen keep their own beliefs.
Prediction semantic_predict_update(LearnerModel& model, const EngagementEvent& event,
                                   const SRTable& table, const ModelConfig& base,
                                   const PropagationConfig& cfg);

}  // namespace truelearn
