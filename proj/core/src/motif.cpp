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

#include "starmotif/motif.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace starmotif {
namespace {

constexpr std::size_t kEgoBlock = 1024;

// Appends alter-alter edges (a, b), a < b, where both endpoints are in the
// sorted `alters` list. Scans whichever of a's adjacency row and the alter
// list is shorter so that high-degree alters stay cheap.
void induced_edges(const AnalysisGraph& graph, std::span<const NodeIndex> alters,
                   std::vector<std::pair<NodeIndex, NodeIndex>>& out) {
  for (NodeIndex a : alters) {
    auto nbrs = graph.neighbors(a);
    if (nbrs.size() <= alters.size()) {
      for (auto it = std::upper_bound(nbrs.begin(), nbrs.end(), a);
           it != nbrs.end(); ++it) {
        if (std::binary_search(alters.begin(), alters.end(), *it)) {
          out.emplace_back(a, *it);
        }
      }
    } else {
      for (auto it = std::upper_bound(alters.begin(), alters.end(), a);
           it != alters.end(); ++it) {
        if (std::binary_search(nbrs.begin(), nbrs.end(), *it)) {
          out.emplace_back(a, *it);
        }
      }
    }
  }
}

StarMotif materialize(const AnalysisGraph& graph, NodeIndex ego,
                      const std::vector<NodeIndex>& alters,
                      const std::vector<std::pair<NodeIndex, NodeIndex>>& edges) {
  StarMotif motif;
  motif.ego = graph.id(ego);
  motif.alters.reserve(alters.size());
  motif.ego_weights.reserve(alters.size());
  for (NodeIndex a : alters) {
    motif.alters.push_back(graph.id(a));
    motif.ego_weights.push_back(graph.edge_weight(ego, a).value_or(0));
  }
  motif.alter_edges.reserve(edges.size());
  for (auto [a, b] : edges) {
    motif.alter_edges.push_back(
        {graph.id(a), graph.id(b), graph.edge_weight(a, b).value_or(0)});
  }
  return motif;
}

std::optional<StarMotif> enforce_strict(const AnalysisGraph& graph,
                                        const EgoCandidate& candidate,
                                        const MotifConfig& config) {
  if (candidate.alters.size() < config.k_min) return std::nullopt;
  std::vector<std::size_t> links(candidate.alters.size(), 0);
  auto position = [&](NodeIndex v) {
    return static_cast<std::size_t>(
        std::lower_bound(candidate.alters.begin(), candidate.alters.end(), v) -
        candidate.alters.begin());
  };
  for (auto [a, b] : candidate.alter_edges) {
    if (++links[position(a)] > kMaxAlterLinks) return std::nullopt;
    if (++links[position(b)] > kMaxAlterLinks) return std::nullopt;
  }
  if (config.bound_alter_global_degree) {
    for (NodeIndex a : candidate.alters) {
      if (graph.degree(a) > kMaxAlterDegree) return std::nullopt;
    }
  }
  return materialize(graph, candidate.ego, candidate.alters,
                     candidate.alter_edges);
}

std::optional<StarMotif> enforce_pruning(const AnalysisGraph& graph,
                                         const EgoCandidate& candidate,
                                         const MotifConfig& config) {
  const std::size_t k = candidate.alters.size();
  if (k < config.k_min) return std::nullopt;

  auto position = [&](NodeIndex v) {
    return static_cast<std::size_t>(
        std::lower_bound(candidate.alters.begin(), candidate.alters.end(), v) -
        candidate.alters.begin());
  };
  std::vector<std::vector<std::size_t>> local(k);
  for (auto [a, b] : candidate.alter_edges) {
    const std::size_t i = position(a), j = position(b);
    local[i].push_back(j);
    local[j].push_back(i);
  }

  std::vector<bool> alive(k, true);
  std::size_t remaining = k;
  if (config.bound_alter_global_degree) {
    for (std::size_t i = 0; i < k; ++i) {
      if (graph.degree(candidate.alters[i]) > kMaxAlterDegree) {
        alive[i] = false;
        --remaining;
      }
    }
  }
  std::vector<std::size_t> links(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (!alive[i]) continue;
    for (std::size_t j : local[i]) links[i] += alive[j] ? 1 : 0;
  }

  // Ordered by (most alter links, smallest index == smallest AgentId).
  auto worse = [&](std::size_t a, std::size_t b) {
    return links[a] != links[b] ? links[a] > links[b] : a < b;
  };
  std::set<std::size_t, decltype(worse)> queue(worse);
  for (std::size_t i = 0; i < k; ++i) {
    if (alive[i] && links[i] > kMaxAlterLinks) queue.insert(i);
  }
  while (!queue.empty() && remaining >= config.k_min) {
    const std::size_t victim = *queue.begin();
    queue.erase(queue.begin());
    alive[victim] = false;
    --remaining;
    for (std::size_t j : local[victim]) {
      if (!alive[j]) continue;
      const bool queued = links[j] > kMaxAlterLinks;
      if (queued) queue.erase(j);
      --links[j];
      if (links[j] > kMaxAlterLinks) queue.insert(j);
    }
  }
  if (remaining < config.k_min) return std::nullopt;

  std::vector<NodeIndex> kept;
  kept.reserve(remaining);
  for (std::size_t i = 0; i < k; ++i) {
    if (alive[i]) kept.push_back(candidate.alters[i]);
  }
  std::vector<std::pair<NodeIndex, NodeIndex>> kept_edges;
  for (auto [a, b] : candidate.alter_edges) {
    if (alive[position(a)] && alive[position(b)]) kept_edges.emplace_back(a, b);
  }
  return materialize(graph, candidate.ego, kept, kept_edges);
}

}  // namespace

std::string PatternCode::render() const {
  std::string out = "S";
  out += static_cast<char>('0' + static_cast<int>(ego));
  out += static_cast<char>('0' + static_cast<int>(alters));
  return out;
}

PatternCode PatternCode::parse(std::string_view text) {
  if (text.size() == 3 && text[0] == 'S' && (text[1] == '0' || text[1] == '1') &&
      text[2] >= '0' && text[2] <= '2') {
    return {static_cast<AgentType>(text[1] - '0'),
            static_cast<AlterComposition>(text[2] - '0')};
  }
  throw InputError("unknown star pattern code '" + std::string(text) + "'");
}

std::size_t PatternCode::ordinal() const {
  return static_cast<std::size_t>(ego) * 3 + static_cast<std::size_t>(alters);
}

const std::array<PatternCode, 6>& all_patterns() {
  static const std::array<PatternCode, 6> kPatterns = {{
      {AgentType::kBot, AlterComposition::kAllBots},
      {AgentType::kBot, AlterComposition::kAllHumans},
      {AgentType::kBot, AlterComposition::kMixed},
      {AgentType::kHuman, AlterComposition::kAllBots},
      {AgentType::kHuman, AlterComposition::kAllHumans},
      {AgentType::kHuman, AlterComposition::kMixed},
  }};
  return kPatterns;
}

std::string_view to_string(ConstraintMode mode) {
  return mode == ConstraintMode::kStrict ? "strict" : "prune_violators";
}

ConstraintMode parse_constraint_mode(std::string_view text) {
  if (text == "strict") return ConstraintMode::kStrict;
  if (text == "prune_violators") return ConstraintMode::kPruneViolators;
  throw ConfigError("unknown constraint mode '" + std::string(text) + "'");
}

void MotifConfig::validate() const {
  if (k_min < 2) throw ConfigError("k_min must be >= 2");
}

EgoCandidate extract_ego_candidate(const AnalysisGraph& graph, NodeIndex ego) {
  if (ego >= graph.num_nodes()) {
    throw LookupError("node index " + std::to_string(ego) + " out of range");
  }
  EgoCandidate candidate;
  candidate.ego = ego;
  auto nbrs = graph.neighbors(ego);
  candidate.alters.assign(nbrs.begin(), nbrs.end());
  induced_edges(graph, candidate.alters, candidate.alter_edges);
  return candidate;
}

EgoCandidate extract_ego_candidate(const AnalysisGraph& graph,
                                   const AgentId& ego) {
  auto index = graph.find(ego);
  if (!index) throw LookupError("unknown ego '" + ego.str() + "'");
  return extract_ego_candidate(graph, *index);
}

std::optional<StarMotif> enforce_constraints(const AnalysisGraph& graph,
                                             const EgoCandidate& candidate,
                                             const MotifConfig& config) {
  config.validate();
  return config.mode == ConstraintMode::kStrict
             ? enforce_strict(graph, candidate, config)
             : enforce_pruning(graph, candidate, config);
}

PatternCode classify_pattern(const StarMotif& motif,
                             const AgentRegistry& registry) {
  PatternCode code;
  code.ego = registry.type_of(motif.ego);
  bool any_bot = false, any_human = false;
  for (const AgentId& alter : motif.alters) {
    if (registry.type_of(alter) == AgentType::kBot) {
      any_bot = true;
    } else {
      any_human = true;
    }
  }
  if (any_bot && any_human) {
    code.alters = AlterComposition::kMixed;
  } else if (any_bot) {
    code.alters = AlterComposition::kAllBots;
  } else {
    code.alters = AlterComposition::kAllHumans;
  }
  return code;
}

std::vector<StarMotif> enumerate_stars(const AnalysisGraph& graph,
                                       const AgentRegistry& registry,
                                       const MotifConfig& config) {
  config.validate();
  const std::size_t n = graph.num_nodes();
  const std::size_t blocks = (n + kEgoBlock - 1) / kEgoBlock;
  std::vector<std::vector<StarMotif>> found(blocks);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t block; (block = next.fetch_add(1)) < blocks;) {
      const std::size_t lo = block * kEgoBlock;
      const std::size_t hi = std::min(n, lo + kEgoBlock);
      for (std::size_t v = lo; v < hi; ++v) {
        const auto ego = static_cast<NodeIndex>(v);
        if (graph.degree(ego) < config.k_min) continue;
        auto motif = enforce_constraints(
            graph, extract_ego_candidate(graph, ego), config);
        if (!motif) continue;
        motif->pattern = classify_pattern(*motif, registry);
        found[block].push_back(std::move(*motif));
      }
    }
  };

  unsigned threads =
      config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = static_cast<unsigned>(
      std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, blocks)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<StarMotif> out;
  for (auto& block : found) {
    std::move(block.begin(), block.end(), std::back_inserter(out));
  }
  std::sort(out.begin(), out.end(), [](const StarMotif& a, const StarMotif& b) {
    return a.k() != b.k() ? a.k() > b.k() : a.ego < b.ego;
  });
  return out;
}

std::array<std::size_t, 6> pattern_histogram(
    const std::vector<StarMotif>& motifs) {
  std::array<std::size_t, 6> counts{};
  for (const StarMotif& motif : motifs) {
    if (motif.pattern) ++counts[motif.pattern->ordinal()];
  }
  return counts;
}

}  // namespace starmotif
