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

#include "starmotif/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>

namespace starmotif {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

std::string padded(std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*zu", width, value);
  return buf;
}

int digits(std::size_t n) {
  int d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

double draw_bot_score(Rng& rng, const ScoreRange& range) {
  return range.lo + rng.uniform() * (range.hi - range.lo);
}

double draw_human_score(Rng& rng, const ScoreRange& range) {
  const double s = range.lo + rng.uniform() * (range.hi - range.lo);
  return s < range.hi ? s : std::nextafter(range.hi, range.lo);
}

// Alter-alter links for k alters: matching, then path, then cycle.
std::vector<std::pair<std::size_t, std::size_t>> alter_layout(std::size_t k,
                                                              std::size_t e) {
  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (std::size_t i = 0; i + 1 < k; i += 2) links.emplace_back(i, i + 1);
  for (std::size_t i = 1; i + 1 < k; i += 2) links.emplace_back(i, i + 1);
  if (k >= 3) links.emplace_back(k - 1, 0);
  links.resize(std::min(e, links.size()));
  return links;
}

// Star of local node `centre` within a small planted component given as a
// dense weight matrix. Returns nullopt if it does not reach k_min.
std::optional<StarMotif> local_star(
    std::size_t centre, const std::vector<std::vector<Weight>>& w,
    const std::vector<AgentId>& ids, const std::vector<AgentType>& types,
    std::size_t k_min) {
  const std::size_t n = ids.size();
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != centre && w[centre][j] > 0) members.push_back(j);
  }
  if (members.size() < k_min) return std::nullopt;
  std::sort(members.begin(), members.end(),
            [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });

  StarMotif motif;
  motif.ego = ids[centre];
  bool any_bot = false, any_human = false;
  for (std::size_t i = 0; i < members.size(); ++i) {
    motif.alters.push_back(ids[members[i]]);
    motif.ego_weights.push_back(w[centre][members[i]]);
    (types[members[i]] == AgentType::kBot ? any_bot : any_human) = true;
    std::size_t links = 0;
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (w[members[i]][members[j]] > 0) {
        ++links;
        if (i < j) {
          motif.alter_edges.push_back({ids[members[i]], ids[members[j]],
                                       w[members[i]][members[j]]});
        }
      }
    }
    if (links > kMaxAlterLinks) {
      throw std::logic_error("planted layout violates the alter-link bound");
    }
  }
  std::sort(motif.alter_edges.begin(), motif.alter_edges.end(),
            [](const AlterEdge& a, const AlterEdge& b) {
              return std::tie(a.first, a.second) < std::tie(b.first, b.second);
            });
  motif.pattern = PatternCode{
      types[centre], any_bot && any_human ? AlterComposition::kMixed
                     : any_bot            ? AlterComposition::kAllBots
                                          : AlterComposition::kAllHumans};
  return motif;
}

void sort_motifs(std::vector<StarMotif>& motifs) {
  std::sort(motifs.begin(), motifs.end(),
            [](const StarMotif& a, const StarMotif& b) {
              return a.k() != b.k() ? a.k() > b.k() : a.ego < b.ego;
            });
}

}  // namespace

void SynthConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("threshold must lie in [0, 1]");
  }
  if (!(bot_scores.lo >= threshold && bot_scores.lo <= bot_scores.hi &&
        bot_scores.hi <= 1.0)) {
    throw ConfigError("bot score range must lie within [threshold, 1]");
  }
  if (!(human_scores.lo >= 0.0 && human_scores.lo < human_scores.hi &&
        human_scores.hi <= threshold)) {
    throw ConfigError("human score range must lie within [0, threshold)");
  }
  if (!(background_edge_prob >= 0.0 && background_edge_prob <= 1.0)) {
    throw ConfigError("background_edge_prob must lie in [0, 1]");
  }
  if (!(background_bot_fraction >= 0.0 && background_bot_fraction <= 1.0)) {
    throw ConfigError("background_bot_fraction must lie in [0, 1]");
  }
  if (weight_min < 1 || weight_max < weight_min) {
    throw ConfigError("weight range must satisfy 1 <= weight_min <= weight_max");
  }
  if (k_min < 2) throw ConfigError("k_min must be >= 2");
  for (const PlantSpec& plant : plants) {
    if (plant.k < k_min) {
      throw ConfigError("plant " + plant.pattern.render() + " has k = " +
                        std::to_string(plant.k) + " below k_min");
    }
    const std::size_t max_links = plant.k == 2 ? 1 : plant.k;
    if (plant.alter_edge_count > max_links) {
      throw ConfigError("plant " + plant.pattern.render() + " with k = " +
                        std::to_string(plant.k) + " cannot hold " +
                        std::to_string(plant.alter_edge_count) +
                        " alter links");
    }
    if (plant.count < 1) throw ConfigError("plant count must be >= 1");
  }
}

std::vector<StarMotif> SynthResult::ground_truth() const {
  std::vector<StarMotif> all = planted;
  all.insert(all.end(), incidental.begin(), incidental.end());
  sort_motifs(all);
  return all;
}

SynthResult generate(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  SynthResult out;
  out.registry = AgentRegistry(config.threshold);
  auto draw_weight = [&] {
    return config.weight_min +
           rng.below(config.weight_max - config.weight_min + 1);
  };
  auto score_for = [&](AgentType type) {
    return type == AgentType::kBot ? draw_bot_score(rng, config.bot_scores)
                                   : draw_human_score(rng, config.human_scores);
  };

  const int plant_width = digits(config.plants.size());
  for (std::size_t p = 0; p < config.plants.size(); ++p) {
    const PlantSpec& plant = config.plants[p];
    const int copy_width = digits(plant.count);
    const int alter_width = digits(plant.k);
    for (std::size_t c = 0; c < plant.count; ++c) {
      const std::string prefix =
          "p" + padded(p, plant_width) + "_" + padded(c, copy_width) + "_";
      const std::size_t n = plant.k + 1;
      std::vector<AgentId> ids;
      ids.reserve(n);
      ids.emplace_back(prefix + "e");
      for (std::size_t j = 0; j < plant.k; ++j) {
        ids.emplace_back(prefix + "a" + padded(j, alter_width));
      }

      std::vector<AgentType> types(n);
      types[0] = plant.pattern.ego;
      switch (plant.pattern.alters) {
        case AlterComposition::kAllBots:
          std::fill(types.begin() + 1, types.end(), AgentType::kBot);
          break;
        case AlterComposition::kAllHumans:
          std::fill(types.begin() + 1, types.end(), AgentType::kHuman);
          break;
        case AlterComposition::kMixed: {
          const std::size_t bots = 1 + rng.below(plant.k - 1);
          for (std::size_t j = 0; j < plant.k; ++j) {
            types[j + 1] = j < bots ? AgentType::kBot : AgentType::kHuman;
          }
          for (std::size_t j = plant.k - 1; j > 0; --j) {
            std::swap(types[j + 1], types[rng.below(j + 1) + 1]);
          }
          break;
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        out.registry.add(ids[i], score_for(types[i]));
      }

      std::vector<std::vector<Weight>> w(n, std::vector<Weight>(n, 0));
      for (std::size_t j = 1; j < n; ++j) {
        const Weight weight = draw_weight();
        w[0][j] = w[j][0] = weight;
        out.retweets.add_retweets(ids[0], ids[j], weight);
      }
      for (auto [a, b] : alter_layout(plant.k, plant.alter_edge_count)) {
        const Weight weight = draw_weight();
        w[a + 1][b + 1] = w[b + 1][a + 1] = weight;
        if (rng.coin()) {
          out.retweets.add_retweets(ids[a + 1], ids[b + 1], weight);
        } else {
          out.retweets.add_retweets(ids[b + 1], ids[a + 1], weight);
        }
      }

      for (std::size_t i = 0; i < n; ++i) {
        auto star = local_star(i, w, ids, types, config.k_min);
        if (!star) continue;
        (i == 0 ? out.planted : out.incidental).push_back(std::move(*star));
      }
    }
  }

  const std::size_t bg = config.background_nodes;
  const int bg_width = digits(bg);
  std::vector<AgentId> background;
  background.reserve(bg);
  for (std::size_t i = 0; i < bg; ++i) {
    background.emplace_back("b" + padded(i, bg_width));
    const AgentType type = rng.uniform() < config.background_bot_fraction
                               ? AgentType::kBot
                               : AgentType::kHuman;
    out.registry.add(background.back(), score_for(type));
  }

  // Geometric skipping over the lower triangle (Batagelj & Brandes).
  const double p = config.background_edge_prob;
  auto add_background_edge = [&](std::size_t v, std::size_t u) {
    const Weight weight = draw_weight();
    if (rng.coin()) {
      out.retweets.add_retweets(background[v], background[u], weight);
    } else {
      out.retweets.add_retweets(background[u], background[v], weight);
    }
  };
  if (p >= 1.0) {
    for (std::size_t v = 1; v < bg; ++v) {
      for (std::size_t u = 0; u < v; ++u) add_background_edge(v, u);
    }
  } else if (p > 0.0 && bg > 1) {
    const double log_q = std::log1p(-p);
    std::size_t v = 1;
    std::int64_t u = -1;
    while (v < bg) {
      const double r = rng.uniform();
      const double skip = std::floor(std::log1p(-r) / log_q);
      u += 1 + static_cast<std::int64_t>(
                   std::min(skip, static_cast<double>(std::int64_t{1} << 62)));
      while (u >= static_cast<std::int64_t>(v) && v < bg) {
        u -= static_cast<std::int64_t>(v);
        ++v;
      }
      if (v < bg) add_background_edge(v, static_cast<std::size_t>(u));
    }
  }

  out.graph = undirected_projection(out.retweets);
  sort_motifs(out.planted);
  sort_motifs(out.incidental);
  return out;
}

}  // namespace starmotif
