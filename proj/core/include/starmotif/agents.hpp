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
#include <unordered_map>
#include <vector>

#include "starmotif/types.hpp"

namespace starmotif {

inline constexpr double kDefaultBotThreshold = 0.7;

// Bot iff a score is present and p_bot >= threshold. A missing score is
// Human. Throws InputError for a score outside [0, 1] (including NaN) and
// ConfigError for a threshold outside [0, 1].
AgentType classify_agent(std::optional<double> p_bot,
                         double threshold = kDefaultBotThreshold);

struct AgentProfile {
  AgentId id;
  std::optional<double> p_bot;
  AgentType agent_type = AgentType::kHuman;

  friend bool operator==(const AgentProfile&, const AgentProfile&) = default;
};

// One profile per agent, classified at a threshold fixed at construction.
class AgentRegistry {
 public:
  explicit AgentRegistry(double threshold = kDefaultBotThreshold);

  // Inserts or replaces the profile for `id`. Returns true if an existing
  // profile was replaced (last write wins).
  bool add(const AgentId& id, std::optional<double> p_bot);

  double threshold() const { return threshold_; }
  std::size_t size() const { return profiles_.size(); }
  bool empty() const { return profiles_.empty(); }
  std::size_t bot_count() const { return bot_count_; }

  bool contains(const AgentId& id) const { return profiles_.contains(id); }
  const AgentProfile* find(const AgentId& id) const;

  // Agents without a profile are Human.
  AgentType type_of(const AgentId& id) const;

  // Sorted by AgentId.
  std::vector<AgentProfile> profiles() const;

  friend bool operator==(const AgentRegistry& a, const AgentRegistry& b);

 private:
  double threshold_;
  std::size_t bot_count_ = 0;
  std::unordered_map<AgentId, AgentProfile> profiles_;
};

// count(Bot) / count(all). Throws StatisticError on an empty registry.
double bot_fraction(const AgentRegistry& registry);

}  // namespace starmotif
