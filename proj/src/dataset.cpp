#include "truelearn/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "truelearn/text.hpp"

namespace truelearn {

namespace {

struct RowError {
  std::size_t line = 0;
  std::string reason;
};

struct ParseContext {
  const LoadOptions& options;
  LoadReport& report;
  std::size_t malformed = 0;
  std::optional<RowError> first_error;
  std::vector<std::pair<std::size_t, EngagementEvent>> events;

  void fail(std::size_t line, std::string reason) {
    ++malformed;
    if (!first_error) {
      first_error = RowError{line, std::move(reason)};
    }
  }
};

// Validates and normalizes one event's topic list in place. Returns an error
// message or an empty string.
std::string finalize_topics(std::vector<TopicCoverage>& topics, ParseContext& ctx) {
  std::set<TopicId> ids;
  for (auto& tc : topics) {
    if (!std::isfinite(tc.depth)) {
      return "depth is not a finite number";
    }
    if (!ids.insert(tc.topic).second) {
      return "duplicate topic id " + std::to_string(tc.topic) + " within event";
    }
    if (tc.depth < 0.0 || tc.depth > 1.0) {
      tc.depth = std::clamp(tc.depth, 0.0, 1.0);
      ++ctx.report.clamped_depths;
    }
  }
  if (ctx.options.top_k_topics && topics.size() > *ctx.options.top_k_topics) {
    std::vector<std::size_t> order(topics.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return topics[a].depth > topics[b].depth;
    });
    order.resize(*ctx.options.top_k_topics);
    std::sort(order.begin(), order.end());
    std::vector<TopicCoverage> kept;
    kept.reserve(order.size());
    for (auto idx : order) kept.push_back(topics[idx]);
    topics = std::move(kept);
  }
  if (topics.size() > kMaxTopicsPerEvent) {
    return "event has " + std::to_string(topics.size()) + " topics (max " +
           std::to_string(kMaxTopicsPerEvent) + ")";
  }
  return {};
}

std::string parse_topic_list(std::string_view field, std::vector<TopicCoverage>& out) {
  for (auto pair : split_fields(field, ';')) {
    pair = trim(pair);
    if (pair.empty()) continue;
    const auto colon = pair.find(':');
    if (colon == std::string_view::npos) {
      return "topic entry '" + std::string(pair) + "' is not topic_id:depth";
    }
    TopicCoverage tc;
    if (!parse_integer(trim(pair.substr(0, colon)), tc.topic)) {
      return "bad topic id in '" + std::string(pair) + "'";
    }
    if (!parse_real(trim(pair.substr(colon + 1)), tc.depth)) {
      return "bad depth in '" + std::string(pair) + "'";
    }
    out.push_back(tc);
  }
  return {};
}

std::string parse_label(std::string_view field, Engagement& label) {
  field = trim(field);
  if (field == "1") {
    label = Engagement::kEngaged;
  } else if (field == "0") {
    label = Engagement::kNotEngaged;
  } else {
    return "label must be 0 or 1, got '" + std::string(field) + "'";
  }
  return {};
}

void accept_event(EngagementEvent ev, std::size_t line, ParseContext& ctx) {
  if (auto err = finalize_topics(ev.topics, ctx); !err.empty()) {
    ctx.fail(line, std::move(err));
    return;
  }
  if (ev.topics.empty()) {
    ++ctx.report.dropped_empty_events;
    return;
  }
  ctx.events.emplace_back(line, std::move(ev));
}

void parse_csv(std::string_view text, ParseContext& ctx) {
  std::size_t line_no = 0;
  std::optional<std::array<std::size_t, 4>> columns;
  for (auto raw : split_lines(text)) {
    ++line_no;
    if (line_no == 1) raw = strip_bom(raw);
    if (trim(raw).empty()) continue;
    auto fields = split_csv_row(raw);
    if (!columns) {
      static constexpr std::array<std::string_view, 4> kNames = {"learner_id", "order_index",
                                                                  "label", "topics"};
      std::array<std::size_t, 4> idx{};
      for (std::size_t c = 0; c < kNames.size(); ++c) {
        auto it = std::find_if(fields.begin(), fields.end(),
                               [&](const std::string& f) { return trim(f) == kNames[c]; });
        if (it == fields.end()) {
          throw DataError("event file header must contain learner_id,order_index,label,topics");
        }
        idx[c] = static_cast<std::size_t>(it - fields.begin());
      }
      columns = idx;
      continue;
    }
    ++ctx.report.rows;
    const auto& col = *columns;
    const auto width = *std::max_element(col.begin(), col.end()) + 1;
    if (fields.size() < width) {
      ctx.fail(line_no, "expected 4 columns, got " + std::to_string(fields.size()));
      continue;
    }
    EngagementEvent ev;
    ev.learner_id = std::string(trim(fields[col[0]]));
    if (ev.learner_id.empty()) {
      ctx.fail(line_no, "empty learner_id");
      continue;
    }
    if (!parse_integer(trim(fields[col[1]]), ev.order_index) || ev.order_index < 0) {
      ctx.fail(line_no, "order_index must be a non-negative integer");
      continue;
    }
    if (auto err = parse_label(fields[col[2]], ev.label); !err.empty()) {
      ctx.fail(line_no, std::move(err));
      continue;
    }
    if (auto err = parse_topic_list(fields[col[3]], ev.topics); !err.empty()) {
      ctx.fail(line_no, std::move(err));
      continue;
    }
    accept_event(std::move(ev), line_no, ctx);
  }
}

std::string topics_from_json(const nlohmann::json& j, std::vector<TopicCoverage>& out) {
  if (j.is_string()) {
    return parse_topic_list(j.get_ref<const std::string&>(), out);
  }
  if (!j.is_array()) return "topics must be a string or an array";
  for (const auto& item : j) {
    TopicCoverage tc;
    if (item.is_array() && item.size() == 2 && item[0].is_number_integer() &&
        item[1].is_number()) {
      tc.topic = item[0].get<TopicId>();
      tc.depth = item[1].get<double>();
    } else if (item.is_object() && item.contains("topic") && item.contains("depth") &&
               item["topic"].is_number_integer() && item["depth"].is_number()) {
      tc.topic = item["topic"].get<TopicId>();
      tc.depth = item["depth"].get<double>();
    } else {
      return "topic entries must be [id, depth] or {\"topic\", \"depth\"}";
    }
    out.push_back(tc);
  }
  return {};
}

void parse_jsonl(std::string_view text, ParseContext& ctx) {
  std::size_t line_no = 0;
  for (auto raw : split_lines(text)) {
    ++line_no;
    if (line_no == 1) raw = strip_bom(raw);
    if (trim(raw).empty()) continue;
    ++ctx.report.rows;
    auto j = nlohmann::json::parse(raw, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      ctx.fail(line_no, "not a JSON object");
      continue;
    }
    EngagementEvent ev;
    const auto& id = j.value("learner_id", nlohmann::json());
    if (id.is_string()) {
      ev.learner_id = id.get<std::string>();
    } else if (id.is_number_integer()) {
      ev.learner_id = std::to_string(id.get<std::int64_t>());
    }
    if (ev.learner_id.empty()) {
      ctx.fail(line_no, "missing learner_id");
      continue;
    }
    const auto& order = j.value("order_index", nlohmann::json());
    if (!order.is_number_integer() || order.get<std::int64_t>() < 0) {
      ctx.fail(line_no, "order_index must be a non-negative integer");
      continue;
    }
    ev.order_index = order.get<std::int64_t>();
    const auto& label = j.value("label", nlohmann::json());
    std::string label_text = label.is_number_integer() ? std::to_string(label.get<std::int64_t>())
                             : label.is_string()       ? label.get<std::string>()
                                                       : std::string("?");
    if (auto err = parse_label(label_text, ev.label); !err.empty()) {
      ctx.fail(line_no, std::move(err));
      continue;
    }
    if (auto err = topics_from_json(j.value("topics", nlohmann::json()), ev.topics);
        !err.empty()) {
      ctx.fail(line_no, std::move(err));
      continue;
    }
    accept_event(std::move(ev), line_no, ctx);
  }
}

// Unbiased draw from [0, bound) on top of the standardized mt19937_64 stream,
// so splits agree across standard library implementations.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

}  // namespace

std::size_t Dataset::num_events() const {
  std::size_t n = 0;
  for (const auto& [id, session] : learners) n += session.size();
  return n;
}

std::vector<LearnerId> Dataset::learners_in(Split which) const {
  std::vector<LearnerId> out;
  for (const auto& [id, s] : split) {
    if (s == which) out.push_back(id);
  }
  return out;
}

Dataset parse_events(std::string_view text, const LoadOptions& options, LoadReport* report) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  rep = LoadReport{};
  ParseContext ctx{options, rep, 0, std::nullopt, {}};
  if (options.format == EventFormat::kCsv) {
    if (!trim(text).empty()) parse_csv(text, ctx);
  } else {
    parse_jsonl(text, ctx);
  }
  if (ctx.malformed > 0) {
    throw DataError(std::to_string(ctx.malformed) + " malformed row(s); first at line " +
                    std::to_string(ctx.first_error->line) + ": " + ctx.first_error->reason);
  }

  Dataset dataset;
  std::map<std::pair<LearnerId, std::int64_t>, std::size_t> seen;
  for (auto& [line, ev] : ctx.events) {
    auto key = std::make_pair(ev.learner_id, ev.order_index);
    if (auto [it, inserted] = seen.emplace(key, line); !inserted) {
      throw DataError("duplicate (learner_id, order_index) = (" + ev.learner_id + ", " +
                      std::to_string(ev.order_index) + ") at lines " +
                      std::to_string(it->second) + " and " + std::to_string(line));
    }
    dataset.learners[ev.learner_id].push_back(std::move(ev));
  }
  for (auto& [id, session] : dataset.learners) {
    std::sort(session.begin(), session.end(),
              [](const EngagementEvent& a, const EngagementEvent& b) {
                return a.order_index < b.order_index;
              });
    dataset.split[id] = Split::kTest;
  }
  if (dataset.learners.empty()) {
    rep.warnings.push_back("event file contains no events");
  }
  if (rep.dropped_empty_events > 0) {
    rep.warnings.push_back("dropped " + std::to_string(rep.dropped_empty_events) +
                           " event(s) without topics");
  }
  if (rep.clamped_depths > 0) {
    rep.warnings.push_back("clamped " + std::to_string(rep.clamped_depths) +
                           " depth value(s) into [0, 1]");
  }
  return dataset;
}

Dataset load_events(const std::filesystem::path& path, const LoadOptions& options,
                    LoadReport* report) {
  return parse_events(read_file(path), options, report);
}

std::string write_events_csv(const Dataset& dataset) {
  std::string out = "learner_id,order_index,label,topics\n";
  for (const auto& [id, session] : dataset.learners) {
    for (const auto& ev : session) {
      out += csv_escape(id);
      out += ',';
      out += std::to_string(ev.order_index);
      out += ',';
      out += ev.label == Engagement::kEngaged ? '1' : '0';
      out += ',';
      for (std::size_t i = 0; i < ev.topics.size(); ++i) {
        if (i > 0) out += ';';
        out += std::to_string(ev.topics[i].topic);
        out += ':';
        out += format_real(ev.topics[i].depth);
      }
      out += '\n';
    }
  }
  return out;
}

Dataset split_learners(Dataset dataset, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  }
  const std::size_t n = dataset.learners.size();
  if (n < 2) {
    throw DataError("split needs at least 2 learners, got " + std::to_string(n));
  }
  std::vector<LearnerId> ids;
  ids.reserve(n);
  for (const auto& [id, session] : dataset.learners) ids.push_back(id);

  std::mt19937_64 rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(ids[i], ids[bounded_draw(rng, i + 1)]);
  }
  auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);

  dataset.split.clear();
  for (std::size_t i = 0; i < n; ++i) {
    dataset.split[ids[i]] = i < n_train ? Split::kTrain : Split::kTest;
  }
  return dataset;
}

Dataset top_learners(const Dataset& dataset, std::size_t n) {
  std::vector<std::pair<std::size_t, LearnerId>> ranked;
  for (const auto& [id, session] : dataset.learners) ranked.emplace_back(session.size(), id);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  ranked.resize(std::min(n, ranked.size()));
  Dataset out;
  for (const auto& [size, id] : ranked) {
    out.learners[id] = dataset.learners.at(id);
    auto it = dataset.split.find(id);
    out.split[id] = it != dataset.split.end() ? it->second : Split::kTest;
  }
  return out;
}

}  // namespace truelearn
