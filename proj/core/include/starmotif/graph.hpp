// Copyright 2026 The starmotif Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "starmotif/types.hpp"

namespace starmotif {

// A directed, weight-aggregated retweet edge: `target` retweeted `source`
// `weight` times, so information flows source -> target.
struct DirectedEdge {
  AgentId source;
  AgentId target;
  Weight weight = 0;

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

// Undirected edge with `first < second` and the summed weight of both
// directions.
struct UndirectedEdge {
  AgentId first;
  AgentId second;
  Weight weight = 0;

  friend bool operator==(const UndirectedEdge&, const UndirectedEdge&) =
      default;
};

// Directed weighted graph aggregated from retweet events. Self-loops are
// never stored and every weight is >= 1.
//
// Equality is structural (same node set, same weighted edge set) and does
// not depend on insertion order.
class RetweetGraph {
 public:
  // Records one retweet of `original_author` by `retweeter`. Returns false
  // (and leaves the graph untouched) for self-retweets.
  bool add_retweet_event(const AgentId& original_author,
                         const AgentId& retweeter);

  // Adds `count` retweets at once; used by pre-aggregated edge lists.
  bool add_retweets(const AgentId& original_author, const AgentId& retweeter,
                    Weight count);

  void add_node(const AgentId& id);

  std::size_t num_nodes() const { return names_.size(); }
  std::size_t num_edges() const { return weights_.size(); }
  Weight total_weight() const;

  bool contains(const AgentId& id) const;
  std::optional<Weight> weight(const AgentId& source,
                               const AgentId& target) const;

  // Sorted by AgentId.
  std::vector<AgentId> nodes() const;
  // Sorted by (source, target).
  std::vector<DirectedEdge> edges() const;

  // Unordered traversal; `fn(source, target, weight)`.
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (const auto& [key, w] : weights_) {
      fn(names_[key >> 32], names_[key & 0xffffffffu], w);
    }
  }

  friend bool operator==(const RetweetGraph& a, const RetweetGraph& b);

 private:
  std::uint32_t intern(const AgentId& id);

  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<AgentId> names_;
  std::unordered_map<std::uint64_t, Weight> weights_;
};

// Simple undirected graph in CSR form used for metrics and motif mining.
// Nodes are indexed 0..n-1 in ascending AgentId order, and every adjacency
// list is sorted, so iteration order is deterministic.
class AnalysisGraph {
 public:
  class Builder {
   public:
    void add_node(const AgentId& id);
    // Parallel additions of the same pair accumulate weight.
    void add_edge(const AgentId& a, const AgentId& b, Weight weight);
    AnalysisGraph build() &&;

   private:
    std::uint32_t intern(const AgentId& id);

    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<AgentId> names_;
    std::unordered_map<std::uint64_t, Weight> weights_;
  };

  AnalysisGraph() = default;

  std::size_t num_nodes() const { return ids_.size(); }
  std::size_t num_edges() const { return adjacency_.size() / 2; }

  const AgentId& id(NodeIndex node) const { return ids_[node]; }
  const std::vector<AgentId>& ids() const { return ids_; }
  std::optional<NodeIndex> find(const AgentId& id) const;

  std::span<const NodeIndex> neighbors(NodeIndex node) const {
    return {adjacency_.data() + offsets_[node],
            adjacency_.data() + offsets_[node + 1]};
  }
  std::span<const Weight> neighbor_weights(NodeIndex node) const {
    return {weights_.data() + offsets_[node],
            weights_.data() + offsets_[node + 1]};
  }
  std::size_t degree(NodeIndex node) const {
    return offsets_[node + 1] - offsets_[node];
  }

  bool has_edge(NodeIndex a, NodeIndex b) const;
  std::optional<Weight> edge_weight(NodeIndex a, NodeIndex b) const;

  // Sorted by (first, second).
  std::vector<UndirectedEdge> edges() const;

  friend bool operator==(const AnalysisGraph&, const AnalysisGraph&) = default;

 private:
  std::vector<AgentId> ids_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeIndex> adjacency_;
  std::vector<Weight> weights_;
};

// Keeps edges with weight >= min_weight. Nodes left without edges are
// dropped unless keep_isolated is set. Throws ConfigError if min_weight < 1.
RetweetGraph prune_by_weight(const RetweetGraph& graph, Weight min_weight,
                             bool keep_isolated = false);
AnalysisGraph prune_by_weight(const AnalysisGraph& graph, Weight min_weight,
                              bool keep_isolated = false);

// {i, j} is present iff (i, j) or (j, i) is; weight is the sum of both
// directions. The node set is preserved.
AnalysisGraph undirected_projection(const RetweetGraph& graph);

}  // namespace starmotif
