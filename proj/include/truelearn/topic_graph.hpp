#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "truelearn/dataset.hpp"
#include "truelearn/sr_table.hpp"

namespace truelearn {

/// Undirected simple graph over the topics of one learner's session.
class LearnerTopicGraph {
 public:
  LearnerTopicGraph() = default;

  /// Nodes are deduplicated and sorted. Throws std::invalid_argument on self
  /// loops or edges that name unknown nodes.
  LearnerTopicGraph(std::vector<TopicId> nodes,
                    std::span<const std::pair<TopicId, TopicId>> edges);

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  const std::vector<TopicId>& nodes() const { return nodes_; }

  /// Neighbours of the node at `index` as node indices, ascending.
  const std::vector<std::size_t>& neighbors(std::size_t index) const { return adjacency_[index]; }
  bool adjacent(std::size_t a, std::size_t b) const;
  bool connected() const;

 private:
  std::vector<TopicId> nodes_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t num_edges_ = 0;
};

/// Graph of the distinct topics in `session`, with an edge wherever the
/// relatedness exceeds `edge_threshold`.
LearnerTopicGraph build_topic_graph(const SRTable& table, const Session& session,
                                    double edge_threshold = 0.0);

/// Mean node degree; 0 for the empty graph.
double avg_connectedness(const LearnerTopicGraph& graph);

/// Vertex connectivity: the fewest nodes whose removal disconnects the graph.
/// 0 for disconnected graphs or fewer than 2 nodes, n - 1 for complete graphs.
std::size_t min_cut_set_size(const LearnerTopicGraph& graph);

}  // namespace truelearn
