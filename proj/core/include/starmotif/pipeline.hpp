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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "starmotif/agents.hpp"
#include "starmotif/centrality.hpp"
#include "starmotif/graph.hpp"
#include "starmotif/io.hpp"
#include "starmotif/motif.hpp"
#include "starmotif/stats.hpp"

namespace starmotif {

struct PipelineConfig {
  // Graph construction.
  Weight min_weight = 3;
  bool keep_isolated = false;
  bool prune_after_projection = false;

  double bot_threshold = kDefaultBotThreshold;

  // Motifs.
  std::size_t k_min = 3;
  ConstraintMode constraint_mode = ConstraintMode::kPruneViolators;
  bool bound_alter_global_degree = false;

  // Centrality.
  bool compute_betweenness = true;
  bool normalize_betweenness = true;
  bool normalize_degree = true;
  bool weighted_centrality = false;
  double eigen_tol = 1e-8;
  int eigen_max_iter = 1000;

  // Statistics.
  TTestVariant t_test = TTestVariant::kStudent;
  std::size_t bonferroni_m = 3;
  double alpha = 0.05;
  std::vector<std::string> metrics = default_metrics();

  // Execution only; kept out of the report so that outputs do not depend
  // on where or how wide a run was.
  unsigned threads = 0;
  std::size_t error_budget = 0;
  std::string output_dir = "starmotif-out";

  // Throws ConfigError on any out-of-range parameter.
  void validate() const;

  MotifConfig motif_config() const;
};

// JSON object with every analysis parameter (execution fields excluded).
std::string config_to_json(const PipelineConfig& config);
// Reads any subset of the keys produced by config_to_json plus "threads",
// "error_budget" and "output_dir" over the defaults. Unknown keys and
// wrongly typed values are ConfigErrors.
PipelineConfig config_from_json(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);

struct AgentSummary {
  std::size_t scored = 0;
  std::size_t scored_bots = 0;
  std::optional<double> scored_bot_fraction;
  std::size_t graph_nodes = 0;
  std::size_t graph_bots = 0;
  std::size_t graph_humans = 0;
  std::optional<double> graph_bot_fraction;
  // Graph nodes missing from the score file, typed Human.
  std::size_t defaulted_to_human = 0;
};

struct GraphSummary {
  Weight retweet_events = 0;
  std::size_t self_retweets_discarded = 0;
  std::size_t raw_nodes = 0;
  std::size_t raw_directed_edges = 0;
  std::size_t analysis_nodes = 0;
  std::size_t analysis_edges = 0;
};

struct StatsNotice {
  std::string metric;  // empty when the whole stage was skipped
  std::string reason;
};

struct AnalysisReport {
  PipelineConfig config;
  AgentSummary agents;
  GraphSummary graph;
  AnalysisGraph analysis_graph;
  std::vector<MetricRecord> metrics;
  std::optional<double> eigenvalue;
  std::vector<StarMotif> motifs;
  std::array<std::size_t, 6> pattern_counts{};
  std::vector<TestResult> tests;
  std::vector<StatsNotice> stats_notices;
  std::vector<std::string> warnings;
};

// Stage helpers, shared by run_pipeline and the CLI subcommands.
AnalysisGraph build_analysis_graph(const RetweetGraph& retweets,
                                   const PipelineConfig& config);

struct MetricStage {
  std::vector<MetricRecord> records;
  std::optional<double> eigenvalue;
  std::vector<std::string> warnings;
};
MetricStage compute_metrics(const AnalysisGraph& graph,
                            const AgentRegistry& registry,
                            const PipelineConfig& config);

struct StatsStage {
  std::vector<TestResult> tests;
  std::vector<StatsNotice> notices;
};
// Per-metric failures (too few agents of a type, zero variance) become
// notices instead of aborting the run.
StatsStage run_statistics(const std::vector<MetricRecord>& records,
                          const PipelineConfig& config);

// aggregate -> prune -> project -> classify -> centralities -> motifs ->
// statistics. The registry's threshold must equal config.bot_threshold.
AnalysisReport run_pipeline(const RetweetGraph& retweets,
                            const AgentRegistry& registry,
                            const PipelineConfig& config);
AnalysisReport run_pipeline(const std::vector<RetweetEventRecord>& events,
                            const AgentRegistry& registry,
                            const PipelineConfig& config);

// Summary document (report.json). Deterministic for equal reports.
std::string report_to_json(const AnalysisReport& report);

// Writes report.json, metrics.csv, motifs.jsonl, tests.csv, graph.graphml
// and metadata.json (the only file carrying a timestamp) into `dir`.
void write_report_bundle(const AnalysisReport& report,
                         const AgentRegistry& registry,
                         const std::filesystem::path& dir);

}  // namespace starmotif
