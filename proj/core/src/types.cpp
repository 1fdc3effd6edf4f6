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

#include "starmotif/types.hpp"

namespace starmotif {

AgentId::AgentId(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw InputError("agent identifier must be non-empty");
}

std::string_view to_string(AgentType type) {
  return type == AgentType::kBot ? "Bot" : "Human";
}

AgentType parse_agent_type(std::string_view text) {
  if (text == "Bot" || text == "bot") return AgentType::kBot;
  if (text == "Human" || text == "human") return AgentType::kHuman;
  throw InputError("unknown agent type '" + std::string(text) + "'");
}

}  // namespace starmotif
