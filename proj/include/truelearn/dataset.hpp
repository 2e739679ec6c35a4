#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace truelearn {

using TopicId = std::int64_t;
using LearnerId = std::string;

/// Raised for malformed input files. Maps to exit code 2 in the CLI.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Engagement : int { kNotEngaged = -1, kEngaged = 1 };

inline int to_int(Engagement e) { return static_cast<int>(e); }

struct TopicCoverage {
  TopicId topic = 0;
  double depth = 0.0;

  friend bool operator==(const TopicCoverage&, const TopicCoverage&) = default;
};

struct EngagementEvent {
  LearnerId learner_id;
  std::int64_t order_index = 0;
  std::vector<TopicCoverage> topics;
  Engagement label = Engagement::kNotEngaged;

  friend bool operator==(const EngagementEvent&, const EngagementEvent&) = default;
};

using Session = std::vector<EngagementEvent>;

enum class Split { kTrain, kTest };

/// Learner sessions keyed by learner id. Sessions are sorted by order_index.
struct Dataset {
  std::map<LearnerId, Session> learners;
  std::map<LearnerId, Split> split;

  std::size_t num_events() const;
  std::vector<LearnerId> learners_in(Split which) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

enum class EventFormat { kCsv, kJsonLines };

struct LoadOptions {
  EventFormat format = EventFormat::kCsv;
  /// Keep only the k deepest topics of each event (ties keep file order).
  std::optional<std::size_t> top_k_topics;
};

inline constexpr std::size_t kMaxTopicsPerEvent = 10;

/// Non-fatal findings while loading an event file.
struct LoadReport {
  std::size_t rows = 0;
  std::size_t dropped_empty_events = 0;
  std::size_t clamped_depths = 0;
  std::vector<std::string> warnings;
};

/// Reads an event file. Throws DataError on malformed rows (reporting the
/// count and the first offending line) or duplicate (learner, order_index).
Dataset load_events(const std::filesystem::path& path, const LoadOptions& options = {},
                    LoadReport* report = nullptr);
Dataset parse_events(std::string_view text, const LoadOptions& options = {},
                     LoadReport* report = nullptr);

/// Serializes to the CSV event schema (learners and events in order).
std::string write_events_csv(const Dataset& dataset);

/// Learner-level split. |train| = round(train_fraction * n), clamped so both
/// sides are non-empty. Deterministic for a fixed seed on every platform.
Dataset split_learners(Dataset dataset, double train_fraction, std::uint64_t seed);

/// The n learners with most events (ties broken by ascending learner id).
/// Split assignments of the kept learners are preserved.
Dataset top_learners(const Dataset& dataset, std::size_t n);

}  // namespace truelearn
