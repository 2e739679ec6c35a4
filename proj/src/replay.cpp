#include "truelearn/replay.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "truelearn/semantic.hpp"
#include "truelearn/text.hpp"

namespace truelearn {

std::string_view model_id(ModelKind kind) {
  return kind == ModelKind::kTrueLearnNovel ? "truelearn-novel" : "semantic-truelearn";
}

std::string_view model_display_name(ModelKind kind) {
  return kind == ModelKind::kTrueLearnNovel ? "TrueLearn Novel" : "Semantic TrueLearn";
}

std::optional<ModelKind> parse_model_kind(std::string_view text) {
  const auto t = to_lower(trim(text));
  if (t == "truelearn-novel") return ModelKind::kTrueLearnNovel;
  if (t == "semantic-truelearn") return ModelKind::kSemanticTrueLearn;
  return std::nullopt;
}

std::vector<LearnerScore> replay_cohort(const Dataset& dataset,
                                        const std::vector<LearnerId>& learners, ModelKind kind,
                                        const RunConfig& cfg, const SRTable* table,
                                        std::size_t workers, std::size_t* skipped) {
  if (kind == ModelKind::kSemanticTrueLearn && table == nullptr) {
    throw std::invalid_argument("the semantic model needs a relatedness table");
  }
  std::optional<SemanticPropagator> propagator;
  if (kind == ModelKind::kSemanticTrueLearn) {
    propagator.emplace(*table, cfg.propagation, cfg.model);
  }
  const PriorProvider* provider = propagator ? &*propagator : nullptr;

  std::vector<std::optional<LearnerScore>> slots(learners.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto work = [&] {
    try {
      for (std::size_t i = next++; i < learners.size(); i = next++) {
        const auto& session = dataset.learners.at(learners[i]);
        if (session.empty()) continue;
        slots[i] = score_learner(learners[i], replay_session(session, cfg.model, provider));
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = learners.size();
    }
  };

  const std::size_t n_threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, learners.size()));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<LearnerScore> scores;
  scores.reserve(slots.size());
  std::size_t empty = 0;
  for (auto& s : slots) {
    if (s) {
      scores.push_back(std::move(*s));
    } else {
      ++empty;
    }
  }
  if (skipped != nullptr) *skipped = empty;
  return scores;
}

}  // namespace truelearn
