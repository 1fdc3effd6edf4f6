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

#include "starmotif/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace starmotif {
namespace {

using json = nlohmann::ordered_json;

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
T get_as(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (min_weight < 1) throw ConfigError("min_weight must be >= 1");
  if (!(bot_threshold >= 0.0 && bot_threshold <= 1.0)) {
    throw ConfigError("bot_threshold must lie in [0, 1]");
  }
  motif_config().validate();
  if (!(eigen_tol > 0.0)) throw ConfigError("eigen_tol must be > 0");
  if (eigen_max_iter < 1) throw ConfigError("eigen_max_iter must be >= 1");
  if (bonferroni_m < 1) throw ConfigError("bonferroni_m must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (metrics.empty()) throw ConfigError("metrics must not be empty");
  for (const std::string& m : metrics) metric_value(MetricRecord{}, m);
}

MotifConfig PipelineConfig::motif_config() const {
  MotifConfig mc;
  mc.mode = constraint_mode;
  mc.k_min = k_min;
  mc.bound_alter_global_degree = bound_alter_global_degree;
  mc.threads = threads;
  return mc;
}

static json config_json(const PipelineConfig& c) {
  json j;
  j["min_weight"] = c.min_weight;
  j["keep_isolated"] = c.keep_isolated;
  j["prune_after_projection"] = c.prune_after_projection;
  j["bot_threshold"] = c.bot_threshold;
  j["k_min"] = c.k_min;
  j["constraint_mode"] = std::string(to_string(c.constraint_mode));
  j["bound_alter_global_degree"] = c.bound_alter_global_degree;
  j["compute_betweenness"] = c.compute_betweenness;
  j["normalize_betweenness"] = c.normalize_betweenness;
  j["normalize_degree"] = c.normalize_degree;
  j["weighted_centrality"] = c.weighted_centrality;
  j["eigen_tol"] = c.eigen_tol;
  j["eigen_max_iter"] = c.eigen_max_iter;
  j["t_test"] = std::string(to_string(c.t_test));
  j["bonferroni_m"] = c.bonferroni_m;
  j["alpha"] = c.alpha;
  j["metrics"] = c.metrics;
  return j;
}

std::string config_to_json(const PipelineConfig& config) {
  return config_json(config).dump(2);
}

PipelineConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  PipelineConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "min_weight") {
      c.min_weight = get_as<Weight>(value, key);
    } else if (key == "keep_isolated") {
      c.keep_isolated = get_as<bool>(value, key);
    } else if (key == "prune_after_projection") {
      c.prune_after_projection = get_as<bool>(value, key);
    } else if (key == "bot_threshold") {
      c.bot_threshold = get_as<double>(value, key);
    } else if (key == "k_min") {
      c.k_min = get_as<std::size_t>(value, key);
    } else if (key == "constraint_mode") {
      c.constraint_mode = parse_constraint_mode(get_as<std::string>(value, key));
    } else if (key == "bound_alter_global_degree") {
      c.bound_alter_global_degree = get_as<bool>(value, key);
    } else if (key == "compute_betweenness") {
      c.compute_betweenness = get_as<bool>(value, key);
    } else if (key == "normalize_betweenness") {
      c.normalize_betweenness = get_as<bool>(value, key);
    } else if (key == "normalize_degree") {
      c.normalize_degree = get_as<bool>(value, key);
    } else if (key == "weighted_centrality") {
      c.weighted_centrality = get_as<bool>(value, key);
    } else if (key == "eigen_tol") {
      c.eigen_tol = get_as<double>(value, key);
    } else if (key == "eigen_max_iter") {
      c.eigen_max_iter = get_as<int>(value, key);
    } else if (key == "t_test") {
      c.t_test = parse_t_test_variant(get_as<std::string>(value, key));
    } else if (key == "bonferroni_m") {
      c.bonferroni_m = get_as<std::size_t>(value, key);
    } else if (key == "alpha") {
      c.alpha = get_as<double>(value, key);
    } else if (key == "metrics") {
      c.metrics = get_as<std::vector<std::string>>(value, key);
    } else if (key == "threads") {
      c.threads = get_as<unsigned>(value, key);
    } else if (key == "error_budget") {
      c.error_budget = get_as<std::size_t>(value, key);
    } else if (key == "output_dir") {
      c.output_dir = get_as<std::string>(value, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

AnalysisGraph build_analysis_graph(const RetweetGraph& retweets,
                                   const PipelineConfig& config) {
  if (config.prune_after_projection) {
    return prune_by_weight(undirected_projection(retweets), config.min_weight,
                           config.keep_isolated);
  }
  return undirected_projection(
      prune_by_weight(retweets, config.min_weight, config.keep_isolated));
}

MetricStage compute_metrics(const AnalysisGraph& graph,
                            const AgentRegistry& registry,
                            const PipelineConfig& config) {
  MetricStage stage;
  const std::size_t n = graph.num_nodes();
  if (n == 0) return stage;

  const std::vector<double> degree =
      total_degree_centrality(graph, config.normalize_degree);
  std::vector<double> betweenness(n, 0.0);
  if (config.compute_betweenness) {
    betweenness = betweenness_centrality(
        graph, {.normalized = config.normalize_betweenness,
                .weighted = config.weighted_centrality,
                .threads = config.threads});
  } else {
    stage.warnings.push_back("betweenness not computed (disabled); reported as 0 and not tested");
  }
  const EigenvectorResult eigen = eigenvector_centrality(
      graph, {.tol = config.eigen_tol,
              .max_iter = config.eigen_max_iter,
              .weighted = config.weighted_centrality});
  stage.eigenvalue = eigen.eigenvalue;
  if (eigen.disconnected) {
    stage.warnings.push_back(
        "graph is disconnected; eigenvector centrality computed on the largest "
        "connected component, zero elsewhere");
  }
  if (eigen.degenerate) {
    stage.warnings.push_back(
        "several largest components tie in size (degenerate dominant "
        "eigenvalue); scored the one containing the smallest agent id");
  }

  stage.records.reserve(n);
  for (NodeIndex v = 0; v < n; ++v) {
    stage.records.push_back({graph.id(v), betweenness[v], eigen.scores[v],
                             degree[v], registry.type_of(graph.id(v))});
  }
  return stage;
}

StatsStage run_statistics(const std::vector<MetricRecord>& records,
                          const PipelineConfig& config) {
  StatsStage stage;
  for (const std::string& metric : config.metrics) {
    if (metric == "betweenness" && !config.compute_betweenness) {
      stage.notices.push_back({metric, "not computed; test skipped"});
      continue;
    }
    try {
      auto results = compare_bots_humans(records, {metric}, config.bonferroni_m,
                                         config.alpha, config.t_test);
      stage.tests.push_back(std::move(results.front()));
    } catch (const StatisticError& e) {
      if (e.kind() == StatisticError::Kind::kInsufficientSample) {
        // Group sizes do not depend on the metric.
        stage.notices.push_back({"", e.what()});
        return stage;
      }
      stage.notices.push_back({metric, e.what()});
    }
  }
  return stage;
}

AnalysisReport run_pipeline(const RetweetGraph& retweets,
                            const AgentRegistry& registry,
                            const PipelineConfig& config) {
  config.validate();
  if (registry.threshold() != config.bot_threshold) {
    throw ConfigError("score registry threshold " +
                      format_double(registry.threshold()) +
                      " differs from configured bot_threshold " +
                      format_double(config.bot_threshold));
  }
  AnalysisReport report;
  report.config = config;

  report.graph.retweet_events = retweets.total_weight();
  report.graph.raw_nodes = retweets.num_nodes();
  report.graph.raw_directed_edges = retweets.num_edges();

  report.analysis_graph = build_analysis_graph(retweets, config);
  const AnalysisGraph& graph = report.analysis_graph;
  report.graph.analysis_nodes = graph.num_nodes();
  report.graph.analysis_edges = graph.num_edges();

  AgentSummary& agents = report.agents;
  agents.scored = registry.size();
  agents.scored_bots = registry.bot_count();
  if (!registry.empty()) agents.scored_bot_fraction = bot_fraction(registry);
  agents.graph_nodes = graph.num_nodes();
  for (const AgentId& id : graph.ids()) {
    if (!registry.contains(id)) ++agents.defaulted_to_human;
    if (registry.type_of(id) == AgentType::kBot) ++agents.graph_bots;
  }
  agents.graph_humans = agents.graph_nodes - agents.graph_bots;
  if (agents.graph_nodes > 0) {
    agents.graph_bot_fraction = static_cast<double>(agents.graph_bots) /
                                static_cast<double>(agents.graph_nodes);
  }
  if (agents.defaulted_to_human > 0) {
    report.warnings.push_back(std::to_string(agents.defaulted_to_human) +
                              " graph node(s) had no bot score and were typed "
                              "Human");
  }

  if (graph.num_nodes() == 0) {
    report.warnings.push_back("analysis graph is empty after pruning");
    report.stats_notices.push_back(
        {"", "insufficient sample: no agents in the analysis graph"});
    return report;
  }

  MetricStage metrics = compute_metrics(graph, registry, config);
  report.metrics = std::move(metrics.records);
  report.eigenvalue = metrics.eigenvalue;
  report.warnings.insert(report.warnings.end(), metrics.warnings.begin(),
                         metrics.warnings.end());

  report.motifs = enumerate_stars(graph, registry, config.motif_config());
  report.pattern_counts = pattern_histogram(report.motifs);

  StatsStage stats = run_statistics(report.metrics, config);
  report.tests = std::move(stats.tests);
  report.stats_notices = std::move(stats.notices);
  return report;
}

AnalysisReport run_pipeline(const std::vector<RetweetEventRecord>& events,
                            const AgentRegistry& registry,
                            const PipelineConfig& config) {
  std::size_t self_loops = 0;
  const RetweetGraph retweets = aggregate_events(events, &self_loops);
  AnalysisReport report = run_pipeline(retweets, registry, config);
  report.graph.self_retweets_discarded = self_loops;
  report.graph.retweet_events += self_loops;
  return report;
}

std::string report_to_json(const AnalysisReport& report) {
  json j;
  j["config"] = config_json(report.config);

  const AgentSummary& a = report.agents;
  j["agents"] = {
      {"scored", a.scored},
      {"scored_bots", a.scored_bots},
      {"scored_bot_fraction", optional_number(a.scored_bot_fraction)},
      {"graph_nodes", a.graph_nodes},
      {"graph_bots", a.graph_bots},
      {"graph_humans", a.graph_humans},
      {"graph_bot_fraction", optional_number(a.graph_bot_fraction)},
      {"defaulted_to_human", a.defaulted_to_human},
  };

  const GraphSummary& g = report.graph;
  j["graph"] = {
      {"retweet_events", g.retweet_events},
      {"self_retweets_discarded", g.self_retweets_discarded},
      {"raw_nodes", g.raw_nodes},
      {"raw_directed_edges", g.raw_directed_edges},
      {"analysis_nodes", g.analysis_nodes},
      {"analysis_edges", g.analysis_edges},
  };
  j["eigenvalue"] = optional_number(report.eigenvalue);

  json counts = json::object();
  for (const PatternCode& p : all_patterns()) {
    counts[p.render()] = report.pattern_counts[p.ordinal()];
  }
  j["motifs"] = {{"total", report.motifs.size()}, {"pattern_counts", counts}};

  json results = json::array();
  for (const TestResult& t : report.tests) {
    results.push_back({
        {"metric", t.metric},
        {"t_statistic", t.t_statistic},
        {"df", t.df},
        {"p_value", t.p_value},
        {"corrected_p_value", t.corrected_p},
        {"significant", t.significant},
        {"n_bots", t.n_bots},
        {"n_humans", t.n_humans},
        {"mean_bots", t.mean_bots},
        {"mean_humans", t.mean_humans},
    });
  }
  json notices = json::array();
  for (const StatsNotice& n : report.stats_notices) {
    notices.push_back({{"metric", n.metric.empty() ? json(nullptr) : json(n.metric)},
                       {"reason", n.reason}});
  }
  j["statistics"] = {
      {"variant", std::string(to_string(report.config.t_test))},
      {"bonferroni_m", report.config.bonferroni_m},
      {"alpha", report.config.alpha},
      {"results", results},
      {"notices", notices},
  };
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

void write_report_bundle(const AnalysisReport& report,
                         const AgentRegistry& registry,
                         const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw InputError("cannot create output directory '" + dir.string() +
                     "': " + ec.message());
  }
  write_text(dir / "report.json", report_to_json(report));
  write_metrics(dir / "metrics.csv", report.metrics);
  write_motifs(dir / "motifs.jsonl", report.motifs);
  write_test_results(dir / "tests.csv", report.tests);
  export_graphml(report.analysis_graph, registry, dir / "graph.graphml");

  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  json meta = {
      {"generated_at", stamp},
      {"output_dir", dir.string()},
      {"threads", report.config.threads},
      {"error_budget", report.config.error_budget},
  };
  write_text(dir / "metadata.json", meta.dump(2) + "\n");
}

}  // namespace starmotif
