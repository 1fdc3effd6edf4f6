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

#include "starmotif/graph.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace starmotif {
namespace {

std::uint64_t pack(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

// RetweetGraph

std::uint32_t RetweetGraph::intern(const AgentId& id) {
  if (id.empty()) throw InputError("agent identifier must be non-empty");
  auto [it, inserted] =
      index_.try_emplace(id.str(), static_cast<std::uint32_t>(names_.size()));
  if (inserted) names_.push_back(id);
  return it->second;
}

bool RetweetGraph::add_retweet_event(const AgentId& original_author,
                                     const AgentId& retweeter) {
  return add_retweets(original_author, retweeter, 1);
}

bool RetweetGraph::add_retweets(const AgentId& original_author,
                                const AgentId& retweeter, Weight count) {
  if (original_author.empty() || retweeter.empty()) {
    throw InputError("agent identifier must be non-empty");
  }
  if (count == 0) throw InputError("retweet count must be >= 1");
  if (original_author == retweeter) return false;
  const std::uint32_t source = intern(original_author);
  const std::uint32_t target = intern(retweeter);
  weights_[pack(source, target)] += count;
  return true;
}

void RetweetGraph::add_node(const AgentId& id) { intern(id); }

Weight RetweetGraph::total_weight() const {
  Weight total = 0;
  for (const auto& [key, w] : weights_) total += w;
  return total;
}

bool RetweetGraph::contains(const AgentId& id) const {
  return index_.contains(id.str());
}

std::optional<Weight> RetweetGraph::weight(const AgentId& source,
                                           const AgentId& target) const {
  auto s = index_.find(source.str());
  auto t = index_.find(target.str());
  if (s == index_.end() || t == index_.end()) return std::nullopt;
  auto it = weights_.find(pack(s->second, t->second));
  if (it == weights_.end()) return std::nullopt;
  return it->second;
}

std::vector<AgentId> RetweetGraph::nodes() const {
  std::vector<AgentId> out = names_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DirectedEdge> RetweetGraph::edges() const {
  std::vector<DirectedEdge> out;
  out.reserve(weights_.size());
  for_each_edge([&](const AgentId& s, const AgentId& t, Weight w) {
    out.push_back({s, t, w});
  });
  std::sort(out.begin(), out.end(),
            [](const DirectedEdge& a, const DirectedEdge& b) {
              return std::tie(a.source, a.target) <
                     std::tie(b.source, b.target);
            });
  return out;
}

bool operator==(const RetweetGraph& a, const RetweetGraph& b) {
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges()) {
    return false;
  }
  return a.nodes() == b.nodes() && a.edges() == b.edges();
}

RetweetGraph prune_by_weight(const RetweetGraph& graph, Weight min_weight,
                             bool keep_isolated) {
  if (min_weight < 1) throw ConfigError("min_weight must be >= 1");
  RetweetGraph out;
  if (keep_isolated) {
    for (const AgentId& id : graph.nodes()) out.add_node(id);
  }
  // Sorted traversal keeps the interned order reproducible.
  for (const DirectedEdge& e : graph.edges()) {
    if (e.weight >= min_weight) out.add_retweets(e.source, e.target, e.weight);
  }
  return out;
}

// AnalysisGraph::Builder

std::uint32_t AnalysisGraph::Builder::intern(const AgentId& id) {
  if (id.empty()) throw InputError("agent identifier must be non-empty");
  auto [it, inserted] =
      index_.try_emplace(id.str(), static_cast<std::uint32_t>(names_.size()));
  if (inserted) names_.push_back(id);
  return it->second;
}

void AnalysisGraph::Builder::add_node(const AgentId& id) { intern(id); }

void AnalysisGraph::Builder::add_edge(const AgentId& a, const AgentId& b,
                                      Weight weight) {
  if (a == b) throw InputError("self-loop on '" + a.str() + "'");
  if (weight == 0) throw InputError("edge weight must be >= 1");
  std::uint32_t u = intern(a);
  std::uint32_t v = intern(b);
  if (u > v) std::swap(u, v);
  weights_[pack(u, v)] += weight;
}

AnalysisGraph AnalysisGraph::Builder::build() && {
  const std::size_t n = names_.size();
  // Relabel so that node index order equals AgentId order.
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return names_[a] < names_[b];
  });
  std::vector<NodeIndex> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = static_cast<NodeIndex>(i);

  AnalysisGraph g;
  g.ids_.reserve(n);
  for (std::uint32_t old : order) g.ids_.push_back(std::move(names_[old]));

  std::vector<std::size_t> degree(n, 0);
  for (const auto& [key, w] : weights_) {
    ++degree[rank[key >> 32]];
    ++degree[rank[key & 0xffffffffu]];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];

  g.adjacency_.resize(g.offsets_[n]);
  g.weights_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [key, w] : weights_) {
    const NodeIndex u = rank[key >> 32];
    const NodeIndex v = rank[key & 0xffffffffu];
    g.adjacency_[cursor[u]] = v;
    g.weights_[cursor[u]++] = w;
    g.adjacency_[cursor[v]] = u;
    g.weights_[cursor[v]++] = w;
  }
  // Sort each adjacency row together with its weights.
  std::vector<std::pair<NodeIndex, Weight>> row;
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t lo = g.offsets_[u], hi = g.offsets_[u + 1];
    row.clear();
    for (std::size_t i = lo; i < hi; ++i) {
      row.emplace_back(g.adjacency_[i], g.weights_[i]);
    }
    std::sort(row.begin(), row.end());
    for (std::size_t i = lo; i < hi; ++i) {
      g.adjacency_[i] = row[i - lo].first;
      g.weights_[i] = row[i - lo].second;
    }
  }
  return g;
}

// AnalysisGraph

std::optional<NodeIndex> AnalysisGraph::find(const AgentId& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<NodeIndex>(it - ids_.begin());
}

bool AnalysisGraph::has_edge(NodeIndex a, NodeIndex b) const {
  auto nbrs = neighbors(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::optional<Weight> AnalysisGraph::edge_weight(NodeIndex a,
                                                 NodeIndex b) const {
  auto nbrs = neighbors(a);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b);
  if (it == nbrs.end() || *it != b) return std::nullopt;
  return neighbor_weights(a)[static_cast<std::size_t>(it - nbrs.begin())];
}

std::vector<UndirectedEdge> AnalysisGraph::edges() const {
  std::vector<UndirectedEdge> out;
  out.reserve(num_edges());
  for (NodeIndex u = 0; u < num_nodes(); ++u) {
    auto nbrs = neighbors(u);
    auto ws = neighbor_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (nbrs[i] > u) out.push_back({ids_[u], ids_[nbrs[i]], ws[i]});
    }
  }
  return out;
}

AnalysisGraph prune_by_weight(const AnalysisGraph& graph, Weight min_weight,
                              bool keep_isolated) {
  if (min_weight < 1) throw ConfigError("min_weight must be >= 1");
  AnalysisGraph::Builder builder;
  if (keep_isolated) {
    for (const AgentId& id : graph.ids()) builder.add_node(id);
  }
  for (const UndirectedEdge& e : graph.edges()) {
    if (e.weight >= min_weight) builder.add_edge(e.first, e.second, e.weight);
  }
  return std::move(builder).build();
}

AnalysisGraph undirected_projection(const RetweetGraph& graph) {
  AnalysisGraph::Builder builder;
  for (const AgentId& id : graph.nodes()) builder.add_node(id);
  graph.for_each_edge([&](const AgentId& s, const AgentId& t, Weight w) {
    builder.add_edge(s, t, w);
  });
  return std::move(builder).build();
}

}  // namespace starmotif
