#include "truelearn/sr_table.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "truelearn/text.hpp"

namespace truelearn {

namespace {

struct MetricNames {
  SRMetric metric;
  std::string_view token;
  std::string_view display;
};

constexpr std::array<MetricNames, 7> kMetricNames = {{
    {SRMetric::kMW, "mw", "M&W"},
    {SRMetric::kW2V, "w2v", "W2V"},
    {SRMetric::kPMI, "pmi", "PMI"},
    {SRMetric::kLM, "lm", "LM"},
    {SRMetric::kJaccard, "jaccard", "Jaccard"},
    {SRMetric::kCP, "cp", "CP"},
    {SRMetric::kBA, "ba", "BA"},
}};

std::string known_metrics_list() {
  std::string out;
  for (const auto& m : kMetricNames) {
    if (!out.empty()) out += ", ";
    out += m.token;
  }
  return out;
}

std::pair<TopicId, TopicId> ordered(TopicId a, TopicId b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

struct Malformed {
  std::size_t count = 0;
  std::size_t first_line = 0;
  std::string first_reason;

  void add(std::size_t line, std::string reason) {
    if (count++ == 0) {
      first_line = line;
      first_reason = std::move(reason);
    }
  }
};

}  // namespace

std::string_view metric_token(SRMetric metric) {
  for (const auto& m : kMetricNames) {
    if (m.metric == metric) return m.token;
  }
  return "?";
}

std::string_view metric_display_name(SRMetric metric) {
  for (const auto& m : kMetricNames) {
    if (m.metric == metric) return m.display;
  }
  return "?";
}

std::optional<SRMetric> parse_metric(std::string_view text) {
  const auto lowered = to_lower(trim(text));
  if (lowered == "m&w") return SRMetric::kMW;
  for (const auto& m : kMetricNames) {
    if (lowered == m.token) return m.metric;
  }
  return std::nullopt;
}

std::size_t SRTable::PairHash::operator()(const std::pair<TopicId, TopicId>& p) const noexcept {
  const auto a = static_cast<std::uint64_t>(p.first);
  const auto b = static_cast<std::uint64_t>(p.second);
  return static_cast<std::size_t>(a * 0x9E3779B97F4A7C15ULL ^ (b + 0x632BE59BD9B4E019ULL));
}

double SRTable::lookup(TopicId a, TopicId b) const {
  if (a == b) return 1.0;
  auto it = values_.find(ordered(a, b));
  return it == values_.end() ? 0.0 : it->second;
}

bool SRTable::set(TopicId a, TopicId b, double value) {
  if (a == b) return false;
  value = std::clamp(value, 0.0, 1.0);
  auto [it, inserted] = values_.insert_or_assign(ordered(a, b), value);
  return !inserted;
}

std::vector<SRTable::Entry> SRTable::entries() const {
  std::vector<Entry> out;
  out.reserve(values_.size());
  for (const auto& [pair, value] : values_) out.push_back({pair.first, pair.second, value});
  std::sort(out.begin(), out.end(), [](const Entry& x, const Entry& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return out;
}

std::string write_sr_table_csv(const SRTable& table) {
  std::string out = "topic_a,topic_b,metric,value\n";
  const auto token = std::string(metric_token(table.metric()));
  for (const auto& e : table.entries()) {
    out += std::to_string(e.a) + ',' + std::to_string(e.b) + ',' + token + ',' +
           format_real(e.value) + '\n';
  }
  return out;
}

SRTable parse_sr_table(std::string_view text, SRMetric metric, SRLoadReport* report) {
  SRLoadReport local;
  SRLoadReport& rep = report ? *report : local;
  rep = SRLoadReport{};
  SRTable table(metric);

  auto lines = split_lines(text);
  std::size_t header_line = 0;
  while (header_line < lines.size() && trim(lines[header_line]).empty()) ++header_line;
  if (header_line == lines.size()) {
    rep.warnings.push_back("relatedness file is empty");
    return table;
  }
  std::vector<std::string> header;
  for (auto& f : split_csv_row(strip_bom(lines[header_line]))) {
    header.push_back(to_lower(trim(f)));
  }
  if (header.size() < 3 || header[0] != "topic_a" || header[1] != "topic_b") {
    throw DataError("relatedness header must start with topic_a,topic_b");
  }

  const bool long_format =
      header.size() == 4 && header[2] == "metric" && header[3] == "value";
  rep.wide_format = !long_format;

  std::size_t value_column = 0;
  if (!long_format) {
    std::optional<std::size_t> found;
    for (std::size_t c = 2; c < header.size(); ++c) {
      auto m = parse_metric(header[c]);
      if (!m) {
        throw DataError("unknown metric column '" + header[c] + "'; available metrics: " +
                        known_metrics_list());
      }
      if (*m == metric) found = c;
    }
    if (!found) {
      std::string present;
      for (std::size_t c = 2; c < header.size(); ++c) present += (c > 2 ? ", " : "") + header[c];
      throw DataError("metric '" + std::string(metric_token(metric)) +
                      "' not in relatedness file; available metrics: " + present);
    }
    value_column = *found;
  }

  Malformed bad;
  std::set<std::string> metrics_in_file;
  const std::string wanted(metric_token(metric));
  for (std::size_t i = header_line + 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) continue;
    ++rep.rows;
    auto fields = split_csv_row(lines[i]);
    if (fields.size() != header.size()) {
      bad.add(line_no, "expected " + std::to_string(header.size()) + " columns");
      continue;
    }
    std::int64_t a = 0;
    std::int64_t b = 0;
    if (!parse_integer(trim(fields[0]), a) || !parse_integer(trim(fields[1]), b)) {
      bad.add(line_no, "topic ids must be integers");
      continue;
    }
    std::string_view cell;
    if (long_format) {
      auto m = parse_metric(fields[2]);
      if (!m) {
        bad.add(line_no, "unknown metric '" + std::string(trim(fields[2])) +
                             "'; available metrics: " + known_metrics_list());
        continue;
      }
      metrics_in_file.insert(std::string(metric_token(*m)));
      if (*m != metric) continue;
      cell = trim(fields[3]);
    } else {
      cell = trim(fields[value_column]);
      if (cell.empty()) continue;
    }
    double value = 0.0;
    if (!parse_real(cell, value) || std::isnan(value)) {
      bad.add(line_no, "relatedness value '" + std::string(cell) + "' is not a number");
      continue;
    }
    if (a == b) {
      ++rep.self_pairs;
      continue;
    }
    if (value < 0.0 || value > 1.0) ++rep.clamped_values;
    if (table.set(a, b, value)) ++rep.duplicate_pairs;
  }
  if (bad.count > 0) {
    throw DataError(std::to_string(bad.count) + " malformed row(s); first at line " +
                    std::to_string(bad.first_line) + ": " + bad.first_reason);
  }
  if (long_format && rep.rows > 0 && !metrics_in_file.contains(wanted)) {
    std::string present;
    for (const auto& m : metrics_in_file) present += (present.empty() ? "" : ", ") + m;
    throw DataError("metric '" + wanted + "' not in relatedness file; available metrics: " +
                    present);
  }
  if (rep.clamped_values > 0) {
    rep.warnings.push_back("clamped " + std::to_string(rep.clamped_values) +
                           " relatedness value(s) into [0, 1]");
  }
  if (rep.duplicate_pairs > 0) {
    rep.warnings.push_back(std::to_string(rep.duplicate_pairs) +
                           " duplicate pair(s); the last value was kept");
  }
  if (rep.self_pairs > 0) {
    rep.warnings.push_back("ignored " + std::to_string(rep.self_pairs) + " self pair(s)");
  }
  return table;
}

SRTable load_sr_table(const std::filesystem::path& path, SRMetric metric, SRLoadReport* report) {
  return parse_sr_table(read_file(path), metric, report);
}

OmegaSize OmegaSize::top(std::size_t k) {
  if (k == 0) throw std::invalid_argument("omega size must be positive");
  return OmegaSize(k);
}

std::optional<OmegaSize> OmegaSize::parse(std::string_view text) {
  const auto t = to_lower(trim(text));
  if (t == "all") return all();
  if (t == "1") return top(1);
  if (t == "3") return top(3);
  if (t == "5") return top(5);
  if (t == "10") return top(10);
  return std::nullopt;
}

std::string OmegaSize::to_string() const { return is_all() ? "all" : std::to_string(k_); }

std::vector<RelatedTopic> related_seen_topics(const SRTable& table, TopicId target,
                                              const std::set<TopicId>& seen, OmegaSize omega) {
  std::vector<RelatedTopic> related;
  for (TopicId topic : seen) {
    if (topic == target) continue;
    const double rho = table.lookup(target, topic);
    if (rho > 0.0) related.push_back({topic, rho});
  }
  // `seen` iterates in ascending id order, so a stable sort keeps id order on ties.
  std::stable_sort(related.begin(), related.end(),
                   [](const RelatedTopic& a, const RelatedTopic& b) {
                     return a.relatedness > b.relatedness;
                   });
  if (!omega.is_all() && related.size() > omega.k()) related.resize(omega.k());
  return related;
}

}  // namespace truelearn
