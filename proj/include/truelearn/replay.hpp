#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "truelearn/config.hpp"
#include "truelearn/dataset.hpp"
#include "truelearn/metrics.hpp"
#include "truelearn/sr_table.hpp"

namespace truelearn {

enum class ModelKind { kTrueLearnNovel, kSemanticTrueLearn };

/// Command-line identifier: "truelearn-novel" or "semantic-truelearn".
std::string_view model_id(ModelKind kind);
/// Table name: "TrueLearn Novel" or "Semantic TrueLearn".
std::string_view model_display_name(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view text);

/// Replays each listed learner's session sequentially and scores it. Learners
/// are independent, so up to `workers` threads share the list; results are
/// stored by position, which keeps the output identical for any worker count.
/// `table` is required for the semantic model. Learners with empty sessions
/// are skipped and counted in `skipped`.
std::vector<LearnerScore> replay_cohort(const Dataset& dataset,
                                        const std::vector<LearnerId>& learners, ModelKind kind,
                                        const RunConfig& cfg, const SRTable* table,
                                        std::size_t workers, std::size_t* skipped = nullptr);

}  // namespace truelearn
