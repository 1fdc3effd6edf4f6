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

#include "starmotif/agents.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace starmotif {

AgentType classify_agent(std::optional<double> p_bot, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("bot threshold must lie in [0, 1], got " +
                      std::to_string(threshold));
  }
  if (!p_bot) return AgentType::kHuman;
  if (!(*p_bot >= 0.0 && *p_bot <= 1.0)) {
    throw InputError("p_bot must lie in [0, 1], got " + std::to_string(*p_bot));
  }
  return *p_bot >= threshold ? AgentType::kBot : AgentType::kHuman;
}

AgentRegistry::AgentRegistry(double threshold) : threshold_(threshold) {
  // Validates the threshold.
  classify_agent(std::nullopt, threshold_);
}

bool AgentRegistry::add(const AgentId& id, std::optional<double> p_bot) {
  if (id.empty()) throw InputError("agent identifier must be non-empty");
  const AgentType type = classify_agent(p_bot, threshold_);
  auto [it, inserted] = profiles_.try_emplace(id, AgentProfile{id, p_bot, type});
  if (!inserted) {
    if (it->second.agent_type == AgentType::kBot) --bot_count_;
    it->second = AgentProfile{id, p_bot, type};
  }
  if (type == AgentType::kBot) ++bot_count_;
  return !inserted;
}

const AgentProfile* AgentRegistry::find(const AgentId& id) const {
  auto it = profiles_.find(id);
  return it == profiles_.end() ? nullptr : &it->second;
}

AgentType AgentRegistry::type_of(const AgentId& id) const {
  const AgentProfile* profile = find(id);
  return profile ? profile->agent_type : AgentType::kHuman;
}

std::vector<AgentProfile> AgentRegistry::profiles() const {
  std::vector<AgentProfile> out;
  out.reserve(profiles_.size());
  for (const auto& [id, profile] : profiles_) out.push_back(profile);
  std::sort(out.begin(), out.end(),
            [](const AgentProfile& a, const AgentProfile& b) {
              return a.id < b.id;
            });
  return out;
}

bool operator==(const AgentRegistry& a, const AgentRegistry& b) {
  return a.threshold_ == b.threshold_ && a.profiles_ == b.profiles_;
}

double bot_fraction(const AgentRegistry& registry) {
  if (registry.empty()) {
    throw StatisticError(StatisticError::Kind::kUndefined,
                         "bot fraction of an empty registry is undefined");
  }
  return static_cast<double>(registry.bot_count()) /
         static_cast<double>(registry.size());
}

}  // namespace starmotif
