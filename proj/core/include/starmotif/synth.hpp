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
#include <cstdint>
#include <vector>

#include "starmotif/agents.hpp"
#include "starmotif/graph.hpp"
#include "starmotif/motif.hpp"

namespace starmotif {

// `count` node-disjoint stars of the given pattern, each with k alters and
// `alter_edge_count` alter-alter links. Links are laid out as a matching
// first, then chained into a path, then closed into a cycle, so every alter
// keeps at most 2 alter links. Feasible iff alter_edge_count <= k (<= 1 for
// k == 2).
struct PlantSpec {
  PatternCode pattern;
  std::size_t k = 3;
  std::size_t alter_edge_count = 0;
  std::size_t count = 1;
};

struct ScoreRange {
  double lo = 0.0;
  double hi = 1.0;
};

struct SynthConfig {
  std::vector<PlantSpec> plants;
  std::size_t background_nodes = 0;
  // G(n, p) among background nodes only.
  double background_edge_prob = 0.0;
  double background_bot_fraction = 0.25;
  // Inclusive bot range within [threshold, 1]; half-open human range within
  // [0, threshold).
  ScoreRange bot_scores{0.7, 1.0};
  ScoreRange human_scores{0.0, 0.7};
  double threshold = kDefaultBotThreshold;
  // Retweet counts drawn uniformly from [weight_min, weight_max].
  Weight weight_min = 3;
  Weight weight_max = 9;
  std::size_t k_min = 3;
  std::uint64_t seed = 0;

  // Throws ConfigError on an infeasible plant or inconsistent ranges.
  void validate() const;
};

struct SynthResult {
  // Directed retweet graph: every ego edge points ego -> alter (the alter
  // retweets the ego).
  RetweetGraph retweets;
  AnalysisGraph graph;
  AgentRegistry registry;
  // Planted stars, classified.
  std::vector<StarMotif> planted;
  // Stars centred on planted alters whose degree reaches k_min (only
  // possible when alter links are dense). Exact by construction.
  std::vector<StarMotif> incidental;

  // planted + incidental in enumerate_stars order.
  std::vector<StarMotif> ground_truth() const;
};

// Deterministic for a fixed seed. Random numbers come from std::mt19937_64
// (MT19937-64); doubles use the top 53 bits, integer ranges use rejection
// sampling, so outputs do not depend on the standard library's
// distributions.
SynthResult generate(const SynthConfig& config);

}  // namespace starmotif
