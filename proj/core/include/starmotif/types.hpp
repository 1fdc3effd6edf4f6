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

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace starmotif {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range input data (exit code 1).
class InputError : public Error {
 public:
  using Error::Error;
};

// Unknown agent or node (exit code 1).
class LookupError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration parameter (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A statistic that is undefined for the given data: empty populations,
// too-small samples, zero variance with distinct means (exit code 1).
class StatisticError : public Error {
 public:
  enum class Kind { kUndefined, kInsufficientSample, kDegenerateVariance };

  StatisticError(Kind kind, const std::string& what)
      : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// An iterative method failed to converge (exit code 3). Carries the last
// iterate so callers can inspect how far it got.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate,
                   double residual)
      : Error(what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual) {}

  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
};

// Opaque platform user identifier. Never empty; compared bytewise.
class AgentId {
 public:
  AgentId() = default;
  explicit AgentId(std::string value);

  const std::string& str() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend bool operator==(const AgentId&, const AgentId&) = default;
  friend std::strong_ordering operator<=>(const AgentId& a, const AgentId& b) {
    return a.value_.compare(b.value_) <=> 0;
  }

 private:
  std::string value_;
};

// Digit values match the first character of the pattern code ("S0x" has a
// bot ego, "S1x" a human ego).
enum class AgentType : std::uint8_t { kBot = 0, kHuman = 1 };

std::string_view to_string(AgentType type);
AgentType parse_agent_type(std::string_view text);

using NodeIndex = std::uint32_t;
using Weight = std::uint64_t;

}  // namespace starmotif

template <>
struct std::hash<starmotif::AgentId> {
  std::size_t operator()(const starmotif::AgentId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
