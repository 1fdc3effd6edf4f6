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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "starmotif/agents.hpp"
#include "starmotif/graph.hpp"
#include "starmotif/motif.hpp"
#include "starmotif/stats.hpp"

// File formats (all CSV files carry a header row):
//
//   events     retweeter,original_author[,timestamp]
//   edge list  source,target,weight        target retweeted source `weight` times
//   scores     user_id,p_bot               empty p_bot = unscored (Human)
//   metrics    user_id,agent_type,betweenness,eigenvector,total_degree
//   tests      metric,t_statistic,p_value,corrected_p_value,significant,bonferroni_m
//   motifs     JSONL, one {"ego","alters","alter_edges","pattern","k"} per line
namespace starmotif {

struct RetweetEventRecord {
  AgentId retweeter;
  AgentId original_author;
  std::optional<std::string> timestamp;  // carried through, never analysed
};

struct RowError {
  std::size_t line = 0;
  std::string message;
};

struct LoadOptions {
  // Row-level errors tolerated before the load fails with InputError.
  std::size_t error_budget = 0;
};

struct EventLoad {
  std::vector<RetweetEventRecord> records;
  std::vector<RowError> errors;
};

struct EdgeListLoad {
  RetweetGraph graph;
  std::vector<RowError> errors;
  std::size_t self_loops = 0;
};

struct ScoreLoad {
  AgentRegistry registry;
  std::vector<RowError> errors;
  std::size_t duplicates = 0;
};

// Each loader throws InputError for a missing file, a missing header column,
// or more row errors than the budget allows.
EventLoad load_events(const std::filesystem::path& path,
                      const LoadOptions& options = {});
EdgeListLoad load_edge_list(const std::filesystem::path& path,
                            const LoadOptions& options = {});
ScoreLoad load_scores(const std::filesystem::path& path,
                      double threshold = kDefaultBotThreshold,
                      const LoadOptions& options = {});
std::vector<MetricRecord> load_metrics(const std::filesystem::path& path);

// Aggregates events into a weighted graph; self-retweets are discarded and
// counted in `self_loops` when given.
RetweetGraph aggregate_events(const std::vector<RetweetEventRecord>& records,
                              std::size_t* self_loops = nullptr);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

// Writers throw InputError when the path cannot be opened for writing.
void write_events(const std::filesystem::path& path, const RetweetGraph& graph);
void write_edge_list(const std::filesystem::path& path,
                     const RetweetGraph& graph);
void write_scores(const std::filesystem::path& path,
                  const AgentRegistry& registry);
void write_metrics(const std::filesystem::path& path,
                   const std::vector<MetricRecord>& records);
void write_test_results(const std::filesystem::path& path,
                        const std::vector<TestResult>& results);

std::string motif_to_json(const StarMotif& motif);
// Inverse of motif_to_json; weights are not part of the catalog and come
// back as zero.
StarMotif motif_from_json(std::string_view line);
void write_motifs(const std::filesystem::path& path,
                  const std::vector<StarMotif>& motifs);
std::vector<StarMotif> read_motifs(const std::filesystem::path& path);

// Undirected DOT rendering of one motif: the ego is drawn as a
// doublecircle, labels carry the agent type, and penwidth scales linearly
// with combined edge weight (heaviest edge = 5).
std::string render_motif_dot(const StarMotif& motif,
                             const AgentRegistry& registry);
void export_motif_dot(const StarMotif& motif, const AgentRegistry& registry,
                      const std::filesystem::path& path);

std::string render_graphml(const AnalysisGraph& graph,
                           const AgentRegistry& registry);
void export_graphml(const AnalysisGraph& graph, const AgentRegistry& registry,
                    const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace starmotif
