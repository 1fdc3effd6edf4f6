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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "starmotif/agents.hpp"
#include "starmotif/graph.hpp"

namespace starmotif {

enum class AlterComposition : std::uint8_t {
  kAllBots = 0,
  kAllHumans = 1,
  kMixed = 2,
};

// "S" + ego digit (0 bot, 1 human) + alter digit (0 all bots, 1 all humans,
// 2 mixed). Exactly six values exist.
struct PatternCode {
  AgentType ego = AgentType::kBot;
  AlterComposition alters = AlterComposition::kAllBots;

  std::string render() const;
  // Throws InputError for anything that is not one of the six codes.
  static PatternCode parse(std::string_view text);

  // Position of this code in all_patterns().
  std::size_t ordinal() const;

  friend bool operator==(const PatternCode&, const PatternCode&) = default;
};

// S00, S01, S02, S10, S11, S12.
const std::array<PatternCode, 6>& all_patterns();

struct AlterEdge {
  AgentId first;  // first < second
  AgentId second;
  Weight weight = 0;

  friend bool operator==(const AlterEdge&, const AlterEdge&) = default;
};

// One ego with k alters. Alters are sorted by AgentId; ego_weights[i] is the
// combined weight of the ego-alters[i] edge.
struct StarMotif {
  AgentId ego;
  std::vector<AgentId> alters;
  std::vector<Weight> ego_weights;
  std::vector<AlterEdge> alter_edges;  // sorted
  std::optional<PatternCode> pattern;

  std::size_t k() const { return alters.size(); }

  friend bool operator==(const StarMotif&, const StarMotif&) = default;
};

// One-hop neighbourhood of an ego and the edges induced among it.
struct EgoCandidate {
  NodeIndex ego = 0;
  std::vector<NodeIndex> alters;  // sorted
  std::vector<std::pair<NodeIndex, NodeIndex>> alter_edges;  // sorted, a < b
};

enum class ConstraintMode {
  // Reject the whole candidate if any alter has more than 2 alter links.
  kStrict,
  // Drop the worst alter (most alter links, then smallest AgentId) until
  // every remaining alter has at most 2 alter links.
  kPruneViolators,
};

std::string_view to_string(ConstraintMode mode);
ConstraintMode parse_constraint_mode(std::string_view text);

struct MotifConfig {
  ConstraintMode mode = ConstraintMode::kPruneViolators;
  std::size_t k_min = 3;
  // Additionally require every alter's degree in the whole graph to be <= 3.
  bool bound_alter_global_degree = false;
  // 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;

  void validate() const;
};

// Largest alter-alter degree a star member may have, and the matching bound
// on its degree within the motif (one ego edge plus alter links).
inline constexpr std::size_t kMaxAlterLinks = 2;
inline constexpr std::size_t kMaxAlterDegree = 3;

// Throws LookupError if `ego` is not a node of `graph`.
EgoCandidate extract_ego_candidate(const AnalysisGraph& graph,
                                   const AgentId& ego);
EgoCandidate extract_ego_candidate(const AnalysisGraph& graph, NodeIndex ego);

// Applies the star constraints to a candidate. The returned motif has no
// pattern yet.
std::optional<StarMotif> enforce_constraints(const AnalysisGraph& graph,
                                             const EgoCandidate& candidate,
                                             const MotifConfig& config);

PatternCode classify_pattern(const StarMotif& motif,
                             const AgentRegistry& registry);

// Evaluates every node as an ego, keeps the surviving stars and classifies
// them. Sorted by descending k, then ego AgentId.
std::vector<StarMotif> enumerate_stars(const AnalysisGraph& graph,
                                       const AgentRegistry& registry,
                                       const MotifConfig& config = {});

// Motif count per pattern, indexed by PatternCode::ordinal().
std::array<std::size_t, 6> pattern_histogram(
    const std::vector<StarMotif>& motifs);

}  // namespace starmotif
