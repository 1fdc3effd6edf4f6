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

#include "starmotif/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "starmotif/csv.hpp"

namespace starmotif {
namespace {

using json = nlohmann::ordered_json;

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

std::vector<std::size_t> require_columns(
    const csv::Reader& reader, const std::filesystem::path& path,
    std::initializer_list<std::string_view> names) {
  if (!reader.has_header()) {
    throw InputError("'" + path.string() + "' has no header row");
  }
  std::vector<std::size_t> columns;
  for (std::string_view name : names) {
    auto col = reader.column(name);
    if (!col) {
      throw InputError("'" + path.string() + "' is missing required column '" +
                       std::string(name) + "'");
    }
    columns.push_back(*col);
  }
  return columns;
}

void check_budget(const std::vector<RowError>& errors,
                  const std::filesystem::path& path,
                  const LoadOptions& options) {
  if (errors.size() <= options.error_budget) return;
  std::ostringstream msg;
  msg << errors.size() << " malformed row(s) in '" << path.string()
      << "' (budget " << options.error_budget << ")";
  const std::size_t shown = std::min<std::size_t>(errors.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) {
    msg << "; line " << errors[i].line << ": " << errors[i].message;
  }
  throw InputError(msg.str());
}

std::optional<double> parse_double(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<std::uint64_t> parse_uint(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string field_or_empty(const std::vector<std::string>& fields,
                           std::size_t column) {
  return column < fields.size() ? fields[column] : std::string();
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

EventLoad load_events(const std::filesystem::path& path,
                      const LoadOptions& options) {
  std::ifstream in = open_input(path);
  csv::Reader reader(in);
  EventLoad out;
  // A zero-byte file is an empty event log.
  if (!reader.has_header()) return out;
  const auto cols = require_columns(reader, path, {"retweeter", "original_author"});
  const auto timestamp_col = reader.column("timestamp");
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    const std::string retweeter = field_or_empty(fields, cols[0]);
    const std::string author = field_or_empty(fields, cols[1]);
    if (retweeter.empty()) {
      out.errors.push_back({reader.line(), "empty retweeter"});
      continue;
    }
    if (author.empty()) {
      out.errors.push_back({reader.line(), "empty original_author"});
      continue;
    }
    RetweetEventRecord record{AgentId(retweeter), AgentId(author), std::nullopt};
    if (timestamp_col && *timestamp_col < fields.size() &&
        !fields[*timestamp_col].empty()) {
      record.timestamp = fields[*timestamp_col];
    }
    out.records.push_back(std::move(record));
  }
  check_budget(out.errors, path, options);
  return out;
}

EdgeListLoad load_edge_list(const std::filesystem::path& path,
                            const LoadOptions& options) {
  std::ifstream in = open_input(path);
  csv::Reader reader(in);
  const auto cols = require_columns(reader, path, {"source", "target", "weight"});
  EdgeListLoad out;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    const std::string source = field_or_empty(fields, cols[0]);
    const std::string target = field_or_empty(fields, cols[1]);
    const std::string weight_text = field_or_empty(fields, cols[2]);
    if (source.empty() || target.empty()) {
      out.errors.push_back({reader.line(), "empty source or target"});
      continue;
    }
    const auto weight = parse_uint(weight_text);
    if (!weight || *weight == 0) {
      out.errors.push_back({reader.line(), "weight '" + weight_text +
                                               "' is not a positive integer"});
      continue;
    }
    if (!out.graph.add_retweets(AgentId(source), AgentId(target), *weight)) {
      ++out.self_loops;
    }
  }
  check_budget(out.errors, path, options);
  return out;
}

ScoreLoad load_scores(const std::filesystem::path& path, double threshold,
                      const LoadOptions& options) {
  std::ifstream in = open_input(path);
  csv::Reader reader(in);
  const auto cols = require_columns(reader, path, {"user_id", "p_bot"});
  ScoreLoad out{AgentRegistry(threshold), {}, 0};
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    const std::string id = field_or_empty(fields, cols[0]);
    const std::string text = field_or_empty(fields, cols[1]);
    if (id.empty()) {
      out.errors.push_back({reader.line(), "empty user_id"});
      continue;
    }
    std::optional<double> p_bot;
    if (!text.empty()) {
      p_bot = parse_double(text);
      if (!p_bot) {
        out.errors.push_back({reader.line(), "p_bot '" + text + "' is not numeric"});
        continue;
      }
      if (!(*p_bot >= 0.0 && *p_bot <= 1.0)) {
        out.errors.push_back({reader.line(), "p_bot " + text + " outside [0, 1]"});
        continue;
      }
    }
    if (out.registry.add(AgentId(id), p_bot)) ++out.duplicates;
  }
  check_budget(out.errors, path, options);
  return out;
}

std::vector<MetricRecord> load_metrics(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  csv::Reader reader(in);
  const auto cols = require_columns(
      reader, path,
      {"user_id", "agent_type", "betweenness", "eigenvector", "total_degree"});
  std::vector<MetricRecord> out;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    auto fail = [&](const std::string& why) {
      return InputError("'" + path.string() + "' line " +
                        std::to_string(reader.line()) + ": " + why);
    };
    MetricRecord record;
    const std::string id = field_or_empty(fields, cols[0]);
    if (id.empty()) throw fail("empty user_id");
    record.id = AgentId(id);
    try {
      record.agent_type = parse_agent_type(field_or_empty(fields, cols[1]));
    } catch (const InputError& e) {
      throw fail(e.what());
    }
    double* targets[] = {&record.betweenness, &record.eigenvector,
                         &record.total_degree};
    for (int i = 0; i < 3; ++i) {
      const std::string text = field_or_empty(fields, cols[2 + i]);
      auto value = parse_double(text);
      if (!value) throw fail("value '" + text + "' is not numeric");
      *targets[i] = *value;
    }
    out.push_back(std::move(record));
  }
  return out;
}

RetweetGraph aggregate_events(const std::vector<RetweetEventRecord>& records,
                              std::size_t* self_loops) {
  RetweetGraph graph;
  std::size_t dropped = 0;
  for (const RetweetEventRecord& r : records) {
    if (!graph.add_retweet_event(r.original_author, r.retweeter)) ++dropped;
  }
  if (self_loops) *self_loops = dropped;
  return graph;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_events(const std::filesystem::path& path, const RetweetGraph& graph) {
  std::ofstream out = open_output(path);
  out << "retweeter,original_author\n";
  for (const DirectedEdge& e : graph.edges()) {
    const std::string line =
        csv::escape(e.target.str()) + "," + csv::escape(e.source.str()) + "\n";
    for (Weight i = 0; i < e.weight; ++i) out << line;
  }
  finish(out, path);
}

void write_edge_list(const std::filesystem::path& path,
                     const RetweetGraph& graph) {
  std::ofstream out = open_output(path);
  out << "source,target,weight\n";
  for (const DirectedEdge& e : graph.edges()) {
    out << csv::escape(e.source.str()) << ',' << csv::escape(e.target.str())
        << ',' << e.weight << '\n';
  }
  finish(out, path);
}

void write_scores(const std::filesystem::path& path,
                  const AgentRegistry& registry) {
  std::ofstream out = open_output(path);
  out << "user_id,p_bot\n";
  for (const AgentProfile& p : registry.profiles()) {
    out << csv::escape(p.id.str()) << ','
        << (p.p_bot ? format_double(*p.p_bot) : std::string()) << '\n';
  }
  finish(out, path);
}

void write_metrics(const std::filesystem::path& path,
                   const std::vector<MetricRecord>& records) {
  std::ofstream out = open_output(path);
  out << "user_id,agent_type,betweenness,eigenvector,total_degree\n";
  for (const MetricRecord& r : records) {
    out << csv::escape(r.id.str()) << ',' << to_string(r.agent_type) << ','
        << format_double(r.betweenness) << ',' << format_double(r.eigenvector)
        << ',' << format_double(r.total_degree) << '\n';
  }
  finish(out, path);
}

void write_test_results(const std::filesystem::path& path,
                        const std::vector<TestResult>& results) {
  std::ofstream out = open_output(path);
  out << "metric,t_statistic,p_value,corrected_p_value,significant,"
         "bonferroni_m\n";
  for (const TestResult& r : results) {
    out << r.metric << ',' << format_double(r.t_statistic) << ','
        << format_double(r.p_value) << ',' << format_double(r.corrected_p)
        << ',' << (r.significant ? "Yes" : "No") << ',' << r.bonferroni_m
        << '\n';
  }
  finish(out, path);
}

std::string motif_to_json(const StarMotif& motif) {
  json j;
  j["ego"] = motif.ego.str();
  json alters = json::array();
  for (const AgentId& a : motif.alters) alters.push_back(a.str());
  j["alters"] = std::move(alters);
  json edges = json::array();
  for (const AlterEdge& e : motif.alter_edges) {
    edges.push_back(json::array({e.first.str(), e.second.str()}));
  }
  j["alter_edges"] = std::move(edges);
  j["pattern"] = motif.pattern ? motif.pattern->render() : std::string();
  j["k"] = motif.k();
  return j.dump();
}

StarMotif motif_from_json(std::string_view line) {
  try {
    const json j = json::parse(line);
    StarMotif motif;
    motif.ego = AgentId(j.at("ego").get<std::string>());
    for (const auto& a : j.at("alters")) {
      motif.alters.emplace_back(a.get<std::string>());
      motif.ego_weights.push_back(0);
    }
    for (const auto& e : j.at("alter_edges")) {
      motif.alter_edges.push_back({AgentId(e.at(0).get<std::string>()),
                                   AgentId(e.at(1).get<std::string>()), 0});
    }
    const std::string pattern = j.at("pattern").get<std::string>();
    if (!pattern.empty()) motif.pattern = PatternCode::parse(pattern);
    if (j.at("k").get<std::size_t>() != motif.alters.size()) {
      throw InputError("motif k does not match its alter count");
    }
    return motif;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed motif record: ") + e.what());
  }
}

void write_motifs(const std::filesystem::path& path,
                  const std::vector<StarMotif>& motifs) {
  std::ofstream out = open_output(path);
  for (const StarMotif& m : motifs) out << motif_to_json(m) << '\n';
  finish(out, path);
}

std::vector<StarMotif> read_motifs(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::vector<StarMotif> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(motif_from_json(line));
  }
  return out;
}

std::string render_motif_dot(const StarMotif& motif,
                             const AgentRegistry& registry) {
  Weight heaviest = 0;
  for (Weight w : motif.ego_weights) heaviest = std::max(heaviest, w);
  for (const AlterEdge& e : motif.alter_edges) heaviest = std::max(heaviest, e.weight);
  auto penwidth = [&](Weight w) {
    return heaviest == 0 ? std::string("1")
                         : format_double(5.0 * static_cast<double>(w) /
                                         static_cast<double>(heaviest));
  };
  auto node = [&](const AgentId& id, const char* shape) {
    return "  " + dot_quote(id.str()) + " [shape=" + shape + ", label=" +
           dot_quote(id.str() + "\\n" + std::string(to_string(registry.type_of(id)))) +
           "];\n";
  };

  std::string pattern = motif.pattern ? motif.pattern->render() : "star";
  std::string out = "graph " + dot_quote(pattern + "_" + motif.ego.str()) + " {\n";
  out += node(motif.ego, "doublecircle");
  for (const AgentId& a : motif.alters) out += node(a, "circle");
  for (std::size_t i = 0; i < motif.alters.size(); ++i) {
    const Weight w = i < motif.ego_weights.size() ? motif.ego_weights[i] : 0;
    out += "  " + dot_quote(motif.ego.str()) + " -- " +
           dot_quote(motif.alters[i].str()) + " [weight=" + std::to_string(w) +
           ", penwidth=" + penwidth(w) + "];\n";
  }
  for (const AlterEdge& e : motif.alter_edges) {
    out += "  " + dot_quote(e.first.str()) + " -- " + dot_quote(e.second.str()) +
           " [weight=" + std::to_string(e.weight) + ", penwidth=" +
           penwidth(e.weight) + ", style=dashed];\n";
  }
  out += "}\n";
  return out;
}

void export_motif_dot(const StarMotif& motif, const AgentRegistry& registry,
                      const std::filesystem::path& path) {
  write_text(path, render_motif_dot(motif, registry));
}

std::string render_graphml(const AnalysisGraph& graph,
                           const AgentRegistry& registry) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         "  <key id=\"agent_type\" for=\"node\" attr.name=\"agent_type\" "
         "attr.type=\"string\"/>\n"
         "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" "
         "attr.type=\"long\"/>\n"
         "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (const AgentId& id : graph.ids()) {
    out << "    <node id=\"" << xml_escape(id.str())
        << "\"><data key=\"agent_type\">" << to_string(registry.type_of(id))
        << "</data></node>\n";
  }
  for (const UndirectedEdge& e : graph.edges()) {
    out << "    <edge source=\"" << xml_escape(e.first.str()) << "\" target=\""
        << xml_escape(e.second.str()) << "\"><data key=\"weight\">" << e.weight
        << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

void export_graphml(const AnalysisGraph& graph, const AgentRegistry& registry,
                    const std::filesystem::path& path) {
  write_text(path, render_graphml(graph, registry));
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out = open_output(path);
  out << text;
  finish(out, path);
}

}  // namespace starmotif
