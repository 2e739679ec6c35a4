#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "truelearn/dataset.hpp"

namespace truelearn {

/// The seven Wikipedia semantic-relatedness metric families.
enum class SRMetric { kMW, kW2V, kPMI, kLM, kJaccard, kCP, kBA };

inline constexpr std::array<SRMetric, 7> kAllSRMetrics = {
    SRMetric::kMW,      SRMetric::kW2V, SRMetric::kPMI, SRMetric::kLM,
    SRMetric::kJaccard, SRMetric::kCP,  SRMetric::kBA};

/// Lower-case token used in file headers and on the command line ("w2v").
std::string_view metric_token(SRMetric metric);
/// Display name used in report tables ("M&W", "W2V", ...).
std::string_view metric_display_name(SRMetric metric);
/// Case-insensitive; also accepts "m&w".
std::optional<SRMetric> parse_metric(std::string_view text);

/// Symmetric sparse relatedness table for one metric.
///
/// lookup(i, i) is 1 and absent pairs are 0. Stored values lie in [0, 1].
class SRTable {
 public:
  explicit SRTable(SRMetric metric) : metric_(metric) {}

  SRMetric metric() const { return metric_; }

  double lookup(TopicId a, TopicId b) const;

  /// Stores a value for the unordered pair, clamping into [0, 1]. Returns
  /// true when an earlier value for the pair was overwritten. Self pairs are
  /// ignored (they are fixed at 1).
  bool set(TopicId a, TopicId b, double value);

  std::size_t size() const { return values_.size(); }

  struct Entry {
    TopicId a = 0;  ///< a < b
    TopicId b = 0;
    double value = 0.0;
  };
  /// Stored pairs sorted by (a, b).
  std::vector<Entry> entries() const;

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<TopicId, TopicId>& p) const noexcept;
  };

  SRMetric metric_;
  std::unordered_map<std::pair<TopicId, TopicId>, double, PairHash> values_;
};

struct SRLoadReport {
  std::size_t rows = 0;
  std::size_t clamped_values = 0;
  std::size_t duplicate_pairs = 0;
  std::size_t self_pairs = 0;
  bool wide_format = false;
  std::vector<std::string> warnings;
};

/// Reads a long (`topic_a,topic_b,metric,value`) or wide
/// (`topic_a,topic_b,mw,w2v,...`) relatedness file; the layout is detected
/// from the header. Throws DataError if `metric` is not available in the file.
SRTable load_sr_table(const std::filesystem::path& path, SRMetric metric,
                      SRLoadReport* report = nullptr);
SRTable parse_sr_table(std::string_view text, SRMetric metric, SRLoadReport* report = nullptr);

/// Long-format CSV of every stored pair; parses back to an equal table.
std::string write_sr_table_csv(const SRTable& table);

/// Number of related topics used for propagation: a fixed k or all of them.
class OmegaSize {
 public:
  static constexpr OmegaSize all() { return OmegaSize(0); }
  static OmegaSize top(std::size_t k);
  /// Accepts the configurations 1, 3, 5, 10 and "all".
  static std::optional<OmegaSize> parse(std::string_view text);

  bool is_all() const { return k_ == 0; }
  std::size_t k() const { return k_; }
  std::string to_string() const;

  friend bool operator==(const OmegaSize&, const OmegaSize&) = default;

 private:
  constexpr explicit OmegaSize(std::size_t k) : k_(k) {}
  std::size_t k_;
};

struct RelatedTopic {
  TopicId topic = 0;
  double relatedness = 0.0;

  friend bool operator==(const RelatedTopic&, const RelatedTopic&) = default;
};

/// Seen topics with positive relatedness to `target`, strongest first
/// (ties by ascending topic id), truncated to `omega`.
std::vector<RelatedTopic> related_seen_topics(const SRTable& table, TopicId target,
                                              const std::set<TopicId>& seen, OmegaSize omega);

}  // namespace truelearn
