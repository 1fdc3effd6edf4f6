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

// starmotif command line tool.
//
//   starmotif synth   --plant S00:4:0:1 --background-nodes 500 --out data
//   starmotif run     --edges data/edges.csv --scores data/scores.csv --out out
//
// Exit codes: 0 success, 1 input error, 2 config error, 3 internal or
// convergence error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "starmotif/io.hpp"
#include "starmotif/pipeline.hpp"
#include "starmotif/synth.hpp"

namespace {

using namespace starmotif;
namespace fs = std::filesystem;

constexpr int kExitInput = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInternal = 3;

// Flags shared by the analysis subcommands. Unset optionals leave the
// config file (or the built-in default) alone.
struct Overrides {
  std::string config_path;
  std::optional<Weight> min_weight;
  std::optional<double> bot_threshold;
  std::optional<std::size_t> k_min;
  bool strict = false;
  std::optional<std::size_t> bonferroni_m;
  std::optional<double> alpha;
  std::optional<std::string> t_test;
  bool no_betweenness = false;
  std::optional<unsigned> threads;
  std::optional<std::size_t> error_budget;
  std::optional<std::string> out;
};

struct Inputs {
  std::string events;
  std::string edges;
  std::string scores;
};

void add_overrides(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd.add_option("--min-weight", o.min_weight, "drop edges lighter than this");
  cmd.add_option("--bot-threshold", o.bot_threshold, "P(bot) at or above which an agent is a bot");
  cmd.add_option("--k-min", o.k_min, "smallest star size reported");
  cmd.add_flag("--strict", o.strict, "reject stars with any over-linked alter");
  cmd.add_option("--bonferroni-m", o.bonferroni_m, "Bonferroni family size");
  cmd.add_option("--alpha", o.alpha, "significance level");
  cmd.add_option("--t-test", o.t_test, "student or welch");
  cmd.add_flag("--no-betweenness", o.no_betweenness, "skip betweenness (large graphs)");
  cmd.add_option("--threads", o.threads, "worker threads, 0 = all cores");
  cmd.add_option("--error-budget", o.error_budget, "malformed rows tolerated per file");
  cmd.add_option("--out", o.out, "output directory");
}

void add_inputs(CLI::App& cmd, Inputs& in, bool scores) {
  auto* events = cmd.add_option("--events", in.events, "retweet events CSV");
  auto* edges = cmd.add_option("--edges", in.edges, "aggregated edge list CSV");
  events->excludes(edges);
  edges->excludes(events);
  if (scores) {
    cmd.add_option("--scores", in.scores, "bot score CSV");
  }
}

PipelineConfig resolve(const Overrides& o) {
  PipelineConfig c = o.config_path.empty() ? PipelineConfig{} : load_config(o.config_path);
  if (o.min_weight) c.min_weight = *o.min_weight;
  if (o.bot_threshold) c.bot_threshold = *o.bot_threshold;
  if (o.k_min) c.k_min = *o.k_min;
  if (o.strict) c.constraint_mode = ConstraintMode::kStrict;
  if (o.bonferroni_m) c.bonferroni_m = *o.bonferroni_m;
  if (o.alpha) c.alpha = *o.alpha;
  if (o.t_test) c.t_test = parse_t_test_variant(*o.t_test);
  if (o.no_betweenness) c.compute_betweenness = false;
  if (o.threads) c.threads = *o.threads;
  if (o.error_budget) c.error_budget = *o.error_budget;
  if (o.out) c.output_dir = *o.out;
  c.validate();
  return c;
}

struct Loaded {
  RetweetGraph retweets;
  AgentRegistry registry;
  std::size_t self_retweets = 0;
};

Loaded load_inputs(const Inputs& in, const PipelineConfig& config) {
  if (in.events.empty() && in.edges.empty()) {
    throw ConfigError("one of --events or --edges is required");
  }
  const LoadOptions options{config.error_budget};
  Loaded out{RetweetGraph{}, AgentRegistry(config.bot_threshold), 0};
  if (!in.events.empty()) {
    const EventLoad load = load_events(in.events, options);
    for (const RowError& e : load.errors) {
      std::cerr << in.events << ":" << e.line << ": " << e.message << "\n";
    }
    out.retweets = aggregate_events(load.records, &out.self_retweets);
  } else {
    EdgeListLoad load = load_edge_list(in.edges, options);
    for (const RowError& e : load.errors) {
      std::cerr << in.edges << ":" << e.line << ": " << e.message << "\n";
    }
    out.retweets = std::move(load.graph);
    out.self_retweets = load.self_loops;
  }
  if (!in.scores.empty()) {
    ScoreLoad load = load_scores(in.scores, config.bot_threshold, options);
    for (const RowError& e : load.errors) {
      std::cerr << in.scores << ":" << e.line << ": " << e.message << "\n";
    }
    if (load.duplicates > 0) {
      std::cerr << "warning: " << load.duplicates
                << " duplicate user_id row(s); the last one wins\n";
    }
    out.registry = std::move(load.registry);
  } else {
    std::cerr << "warning: no --scores given; every agent is typed Human\n";
  }
  return out;
}

fs::path output_dir(const PipelineConfig& config) {
  const fs::path dir = config.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create '" + dir.string() + "': " + ec.message());
  return dir;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

void write_dots(const std::vector<StarMotif>& motifs, const AgentRegistry& registry,
                const std::string& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create '" + dir + "': " + ec.message());
  for (std::size_t i = 0; i < motifs.size(); ++i) {
    const std::string pattern = motifs[i].pattern ? motifs[i].pattern->render() : "star";
    char name[32];
    std::snprintf(name, sizeof(name), "%06zu_", i);
    export_motif_dot(motifs[i], registry, fs::path(dir) / (name + pattern + ".dot"));
  }
}

void print_counts(const std::array<std::size_t, 6>& counts, std::size_t total) {
  std::cout << "motifs: " << total << "\n";
  for (const PatternCode& p : all_patterns()) {
    std::cout << "  " << p.render() << " " << counts[p.ordinal()] << "\n";
  }
}

void print_tests(const std::vector<TestResult>& tests, const std::vector<StatsNotice>& notices) {
  std::printf("%-14s %14s %12s %12s %s\n", "metric", "t-statistic", "p-value",
              "corrected", "significant");
  for (const TestResult& t : tests) {
    std::printf("%-14s %14.6g %12.3E %12.3E %s\n", t.metric.c_str(), t.t_statistic,
                t.p_value, t.corrected_p, t.significant ? "Yes" : "No");
  }
  for (const StatsNotice& n : notices) {
    std::cerr << "notice: " << (n.metric.empty() ? "" : n.metric + ": ") << n.reason << "\n";
  }
}

int cmd_ingest(const Overrides& o, const Inputs& in) {
  const PipelineConfig config = resolve(o);
  const Loaded data = load_inputs(in, config);
  const AnalysisGraph graph = build_analysis_graph(data.retweets, config);
  const fs::path dir = output_dir(config);
  write_edge_list(dir / "edges.csv", data.retweets);
  export_graphml(graph, data.registry, dir / "graph.graphml");
  std::cout << "retweet events:   " << data.retweets.total_weight() << "\n"
            << "self-retweets:    " << data.self_retweets << " discarded\n"
            << "directed edges:   " << data.retweets.num_edges() << "\n"
            << "analysis nodes:   " << graph.num_nodes() << "\n"
            << "analysis edges:   " << graph.num_edges() << "\n";
  return 0;
}

int cmd_metrics(const Overrides& o, const Inputs& in) {
  const PipelineConfig config = resolve(o);
  const Loaded data = load_inputs(in, config);
  const AnalysisGraph graph = build_analysis_graph(data.retweets, config);
  const MetricStage stage = compute_metrics(graph, data.registry, config);
  print_warnings(stage.warnings);
  const fs::path dir = output_dir(config);
  write_metrics(dir / "metrics.csv", stage.records);
  std::cout << "metrics for " << stage.records.size() << " agents written to "
            << (dir / "metrics.csv").string() << "\n";
  return 0;
}

int cmd_motifs(const Overrides& o, const Inputs& in, const std::string& dot_dir) {
  const PipelineConfig config = resolve(o);
  const Loaded data = load_inputs(in, config);
  const AnalysisGraph graph = build_analysis_graph(data.retweets, config);
  const auto motifs = enumerate_stars(graph, data.registry, config.motif_config());
  const fs::path dir = output_dir(config);
  write_motifs(dir / "motifs.jsonl", motifs);
  write_dots(motifs, data.registry, dot_dir);
  print_counts(pattern_histogram(motifs), motifs.size());
  return 0;
}

int cmd_stats(const Overrides& o, const Inputs& in, const std::string& metrics_path) {
  const PipelineConfig config = resolve(o);
  std::vector<MetricRecord> records;
  if (!metrics_path.empty()) {
    records = load_metrics(metrics_path);
  } else {
    const Loaded data = load_inputs(in, config);
    const AnalysisGraph graph = build_analysis_graph(data.retweets, config);
    MetricStage stage = compute_metrics(graph, data.registry, config);
    print_warnings(stage.warnings);
    records = std::move(stage.records);
  }
  const StatsStage stage = run_statistics(records, config);
  const fs::path dir = output_dir(config);
  write_test_results(dir / "tests.csv", stage.tests);
  print_tests(stage.tests, stage.notices);
  return 0;
}

int cmd_run(const Overrides& o, const Inputs& in, const std::string& dot_dir) {
  const PipelineConfig config = resolve(o);
  const Loaded data = load_inputs(in, config);
  AnalysisReport report = run_pipeline(data.retweets, data.registry, config);
  report.graph.self_retweets_discarded = data.self_retweets;
  report.graph.retweet_events += data.self_retweets;
  print_warnings(report.warnings);
  const fs::path dir = output_dir(config);
  write_report_bundle(report, data.registry, dir);
  write_dots(report.motifs, data.registry, dot_dir);
  std::cout << "agents: " << report.agents.graph_nodes << " in graph, "
            << report.agents.graph_bots << " bots\n";
  print_counts(report.pattern_counts, report.motifs.size());
  print_tests(report.tests, report.stats_notices);
  std::cout << "report written to " << dir.string() << "\n";
  return 0;
}

// CODE:K[:LINKS[:COUNT]], e.g. S12:5:2:10.
PlantSpec parse_plant(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t colon; (colon = text.find(':', start)) != std::string::npos;
       start = colon + 1) {
    parts.push_back(text.substr(start, colon - start));
  }
  parts.push_back(text.substr(start));
  if (parts.size() < 2 || parts.size() > 4) {
    throw ConfigError("--plant expects CODE:K[:LINKS[:COUNT]], got '" + text + "'");
  }
  auto number = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) {
      throw ConfigError("--plant field '" + s + "' in '" + text + "' is not a number");
    }
    return static_cast<std::size_t>(v);
  };
  PlantSpec plant;
  try {
    plant.pattern = PatternCode::parse(parts[0]);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  plant.k = number(parts[1]);
  if (parts.size() > 2) plant.alter_edge_count = number(parts[2]);
  if (parts.size() > 3) plant.count = number(parts[3]);
  return plant;
}

struct SynthArgs {
  std::vector<std::string> plants;
  std::size_t background_nodes = 0;
  double background_prob = 0.0;
  double background_bot_fraction = 0.25;
  double bot_threshold = kDefaultBotThreshold;
  std::size_t k_min = 3;
  std::uint64_t seed = 0;
  std::string out = "starmotif-synth";
  bool events = false;
};

int cmd_synth(const SynthArgs& a) {
  SynthConfig config;
  for (const std::string& p : a.plants) config.plants.push_back(parse_plant(p));
  config.background_nodes = a.background_nodes;
  config.background_edge_prob = a.background_prob;
  config.background_bot_fraction = a.background_bot_fraction;
  config.threshold = a.bot_threshold;
  config.bot_scores = {a.bot_threshold, 1.0};
  config.human_scores = {0.0, a.bot_threshold};
  config.k_min = a.k_min;
  config.seed = a.seed;
  const SynthResult result = generate(config);

  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec) throw InputError("cannot create '" + a.out + "': " + ec.message());
  const fs::path dir = a.out;
  write_edge_list(dir / "edges.csv", result.retweets);
  if (a.events) write_events(dir / "events.csv", result.retweets);
  write_scores(dir / "scores.csv", result.registry);
  write_motifs(dir / "ground_truth.jsonl", result.ground_truth());
  std::cout << "nodes: " << result.graph.num_nodes() << ", edges: " << result.graph.num_edges()
            << ", planted: " << result.planted.size()
            << ", incidental: " << result.incidental.size() << "\n"
            << "written to " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Star motif mining on weighted retweet graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "starmotif 0.1.0");

  Overrides overrides;
  Inputs inputs;
  std::string dot_dir;
  std::string metrics_path;
  SynthArgs synth;

  auto* ingest = app.add_subcommand("ingest", "aggregate events and write the pruned graph");
  add_overrides(*ingest, overrides);
  add_inputs(*ingest, inputs, true);

  auto* metrics = app.add_subcommand("metrics", "betweenness, eigenvector and degree centrality");
  add_overrides(*metrics, overrides);
  add_inputs(*metrics, inputs, true);

  auto* motifs = app.add_subcommand("motifs", "enumerate and classify star motifs");
  add_overrides(*motifs, overrides);
  add_inputs(*motifs, inputs, true);
  motifs->add_option("--dot-dir", dot_dir, "write one DOT file per motif here");

  auto* stats = app.add_subcommand("stats", "bot vs human t-tests with Bonferroni correction");
  add_overrides(*stats, overrides);
  add_inputs(*stats, inputs, true);
  stats->add_option("--metrics", metrics_path, "metrics CSV from `starmotif metrics`");

  auto* run = app.add_subcommand("run", "full pipeline: graph, metrics, motifs, statistics");
  add_overrides(*run, overrides);
  add_inputs(*run, inputs, true);
  run->add_option("--dot-dir", dot_dir, "write one DOT file per motif here");

  auto* gen = app.add_subcommand("synth", "generate a labelled graph with planted stars");
  gen->add_option("--plant", synth.plants, "CODE:K[:LINKS[:COUNT]], repeatable");
  gen->add_option("--background-nodes", synth.background_nodes, "G(n, p) background size");
  gen->add_option("--background-prob", synth.background_prob, "G(n, p) edge probability");
  gen->add_option("--background-bot-fraction", synth.background_bot_fraction,
                  "share of background agents that are bots");
  gen->add_option("--bot-threshold", synth.bot_threshold, "classification threshold");
  gen->add_option("--k-min", synth.k_min, "smallest star size");
  gen->add_option("--seed", synth.seed, "random seed");
  gen->add_option("--out", synth.out, "output directory");
  gen->add_flag("--events", synth.events, "also write a weight-expanded events.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*ingest) return cmd_ingest(overrides, inputs);
    if (*metrics) return cmd_metrics(overrides, inputs);
    if (*motifs) return cmd_motifs(overrides, inputs, dot_dir);
    if (*stats) return cmd_stats(overrides, inputs, metrics_path);
    if (*run) return cmd_run(overrides, inputs, dot_dir);
    if (*gen) return cmd_synth(synth);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitInternal;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const LookupError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const StatisticError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
