#include "truelearn/topic_graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

namespace truelearn {

namespace {

// Unit-capacity flow network with every vertex split into in/out halves, so
// that a maximum s-t flow counts internally vertex-disjoint paths.
class SplitVertexNetwork {
 public:
  SplitVertexNetwork(const LearnerTopicGraph& graph, std::size_t source, std::size_t sink)
      : head_(2 * graph.num_nodes(), kNone) {
    const std::size_t n = graph.num_nodes();
    for (std::size_t v = 0; v < n; ++v) {
      const int cap = (v == source || v == sink) ? kInfinite : 1;
      add_arc(in(v), out(v), cap);
      for (std::size_t u : graph.neighbors(v)) {
        add_arc(out(v), in(u), kInfinite);
      }
    }
    source_ = out(source);
    sink_ = in(sink);
  }

  // Augments along shortest paths until `limit` units flow or none remain.
  std::size_t max_flow(std::size_t limit) {
    std::size_t flow = 0;
    std::vector<std::size_t> via(head_.size());
    while (flow < limit) {
      std::fill(via.begin(), via.end(), kNone);
      std::queue<std::size_t> frontier;
      frontier.push(source_);
      via[source_] = kRoot;
      while (!frontier.empty() && via[sink_] == kNone) {
        const auto x = frontier.front();
        frontier.pop();
        for (auto a = head_[x]; a != kNone; a = arcs_[a].next) {
          if (arcs_[a].cap > 0 && via[arcs_[a].to] == kNone) {
            via[arcs_[a].to] = a;
            frontier.push(arcs_[a].to);
          }
        }
      }
      if (via[sink_] == kNone) break;
      for (auto x = sink_; x != source_;) {
        const auto a = via[x];
        arcs_[a].cap -= 1;
        arcs_[a ^ 1].cap += 1;
        x = arcs_[a ^ 1].to;
      }
      ++flow;
    }
    return flow;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kRoot = kNone - 1;
  static constexpr int kInfinite = std::numeric_limits<int>::max() / 2;

  struct Arc {
    std::size_t to;
    std::size_t next;
    int cap;
  };

  static std::size_t in(std::size_t v) { return 2 * v; }
  static std::size_t out(std::size_t v) { return 2 * v + 1; }

  void add_arc(std::size_t from, std::size_t to, int cap) {
    arcs_.push_back({to, head_[from], cap});
    head_[from] = arcs_.size() - 1;
    arcs_.push_back({from, head_[to], 0});
    head_[to] = arcs_.size() - 1;
  }

  std::vector<std::size_t> head_;
  std::vector<Arc> arcs_;
  std::size_t source_ = 0;
  std::size_t sink_ = 0;
};

}  // namespace

LearnerTopicGraph::LearnerTopicGraph(std::vector<TopicId> nodes,
                                     std::span<const std::pair<TopicId, TopicId>> edges)
    : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  adjacency_.resize(nodes_.size());
  const auto index_of = [&](TopicId t) {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
    if (it == nodes_.end() || *it != t) {
      throw std::invalid_argument("edge refers to a topic that is not a node");
    }
    return static_cast<std::size_t>(it - nodes_.begin());
  };
  std::set<std::pair<std::size_t, std::size_t>> unique_edges;
  for (const auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("topic graph cannot contain self loops");
    auto ia = index_of(a);
    auto ib = index_of(b);
    if (ia > ib) std::swap(ia, ib);
    unique_edges.emplace(ia, ib);
  }
  for (const auto& [a, b] : unique_edges) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
  num_edges_ = unique_edges.size();
}

bool LearnerTopicGraph::adjacent(std::size_t a, std::size_t b) const {
  const auto& adj = adjacency_[a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

bool LearnerTopicGraph::connected() const {
  if (nodes_.empty()) return true;
  std::vector<bool> reached(nodes_.size(), false);
  std::vector<std::size_t> stack = {0};
  reached[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto u : adjacency_[v]) {
      if (!reached[u]) {
        reached[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == nodes_.size();
}

LearnerTopicGraph build_topic_graph(const SRTable& table, const Session& session,
                                    double edge_threshold) {
  std::set<TopicId> topics;
  for (const auto& ev : session) {
    for (const auto& tc : ev.topics) topics.insert(tc.topic);
  }
  std::vector<TopicId> nodes(topics.begin(), topics.end());
  std::vector<std::pair<TopicId, TopicId>> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (table.lookup(nodes[i], nodes[j]) > edge_threshold) edges.emplace_back(nodes[i], nodes[j]);
    }
  }
  return LearnerTopicGraph(std::move(nodes), edges);
}

double avg_connectedness(const LearnerTopicGraph& graph) {
  if (graph.num_nodes() == 0) return 0.0;
  return 2.0 * static_cast<double>(graph.num_edges()) / static_cast<double>(graph.num_nodes());
}

std::size_t min_cut_set_size(const LearnerTopicGraph& graph) {
  const std::size_t n = graph.num_nodes();
  if (n < 2 || !graph.connected()) return 0;

  // Minimum degree bounds the connectivity (and is exact for complete graphs).
  std::size_t best = n - 1;
  for (std::size_t v = 0; v < n; ++v) best = std::min(best, graph.neighbors(v).size());

  // Some vertex among the first best+1 lies outside any minimum cut, and it is
  // separated from some non-adjacent vertex by that cut.
  for (std::size_t i = 0; i <= best && i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (graph.adjacent(i, j)) continue;
      SplitVertexNetwork network(graph, i, j);
      best = std::min(best, network.max_flow(best));
    }
  }
  return best;
}

}  // namespace truelearn
