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

#include "starmotif/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <limits>
#include <mutex>
#include <queue>
#include <thread>

namespace starmotif {
namespace {

constexpr std::size_t kSourceBlock = 64;
constexpr double kNoDistance = -1.0;

// Scratch state for single-source dependency accumulation.
struct BrandesWorkspace {
  explicit BrandesWorkspace(std::size_t n)
      : sigma(n), dist(n), delta(n), order() {
    order.reserve(n);
  }

  std::vector<double> sigma;
  std::vector<double> dist;
  std::vector<double> delta;
  std::vector<NodeIndex> order;
};

void single_source_unweighted(const AnalysisGraph& g, NodeIndex s,
                              BrandesWorkspace& ws) {
  std::fill(ws.sigma.begin(), ws.sigma.end(), 0.0);
  std::fill(ws.dist.begin(), ws.dist.end(), kNoDistance);
  ws.order.clear();
  ws.sigma[s] = 1.0;
  ws.dist[s] = 0.0;
  ws.order.push_back(s);
  // `order` doubles as the BFS queue.
  for (std::size_t head = 0; head < ws.order.size(); ++head) {
    const NodeIndex v = ws.order[head];
    for (NodeIndex w : g.neighbors(v)) {
      if (ws.dist[w] < 0) {
        ws.dist[w] = ws.dist[v] + 1.0;
        ws.order.push_back(w);
      }
      if (ws.dist[w] == ws.dist[v] + 1.0) ws.sigma[w] += ws.sigma[v];
    }
  }
}

void single_source_weighted(const AnalysisGraph& g, NodeIndex s,
                            BrandesWorkspace& ws) {
  std::fill(ws.sigma.begin(), ws.sigma.end(), 0.0);
  std::fill(ws.dist.begin(), ws.dist.end(), kNoDistance);
  ws.order.clear();
  using Item = std::pair<double, NodeIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  std::vector<double> tentative(g.num_nodes(),
                                std::numeric_limits<double>::infinity());
  tentative[s] = 0.0;
  ws.sigma[s] = 1.0;
  heap.emplace(0.0, s);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (ws.dist[v] >= 0) continue;
    ws.dist[v] = d;
    ws.order.push_back(v);
    auto nbrs = g.neighbors(v);
    auto weights = g.neighbor_weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeIndex w = nbrs[i];
      if (ws.dist[w] >= 0) continue;
      const double candidate = d + 1.0 / static_cast<double>(weights[i]);
      const double eps = 1e-12 * std::max(1.0, candidate);
      if (candidate < tentative[w] - eps) {
        tentative[w] = candidate;
        ws.sigma[w] = ws.sigma[v];
        heap.emplace(candidate, w);
      } else if (std::abs(candidate - tentative[w]) <= eps) {
        ws.sigma[w] += ws.sigma[v];
      }
    }
  }
}

// Adds the dependencies of source `s` into `partial`.
void accumulate(const AnalysisGraph& g, NodeIndex s, bool weighted,
                BrandesWorkspace& ws, std::vector<double>& partial) {
  std::fill(ws.delta.begin(), ws.delta.end(), 0.0);
  for (auto it = ws.order.rbegin(); it != ws.order.rend(); ++it) {
    const NodeIndex v = *it;
    auto nbrs = g.neighbors(v);
    auto weights = g.neighbor_weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeIndex w = nbrs[i];
      if (ws.dist[w] < 0) continue;
      const double step =
          weighted ? 1.0 / static_cast<double>(weights[i]) : 1.0;
      const double expected = ws.dist[v] + step;
      const bool successor =
          weighted ? std::abs(ws.dist[w] - expected) <=
                         1e-12 * std::max(1.0, expected)
                   : ws.dist[w] == expected;
      if (successor) {
        ws.delta[v] += ws.sigma[v] / ws.sigma[w] * (1.0 + ws.delta[w]);
      }
    }
    if (v != s) partial[v] += ws.delta[v];
  }
}

unsigned resolve_threads(unsigned requested, std::size_t work_items) {
  unsigned threads = requested ? requested : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);
  return static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, work_items)));
}

}  // namespace

std::vector<double> betweenness_centrality(const AnalysisGraph& graph,
                                           const BetweennessOptions& options) {
  const std::size_t n = graph.num_nodes();
  std::vector<double> total(n, 0.0);
  if (n < 3) return total;

  const std::size_t blocks = (n + kSourceBlock - 1) / kSourceBlock;
  const unsigned threads = resolve_threads(options.threads, blocks);

  std::mutex mu;
  std::condition_variable merged_cv;
  std::size_t next_block = 0;
  std::size_t merged_upto = 0;

  auto worker = [&] {
    BrandesWorkspace ws(n);
    std::vector<double> partial(n);
    for (;;) {
      std::size_t block;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next_block == blocks) return;
        block = next_block++;
      }
      std::fill(partial.begin(), partial.end(), 0.0);
      const std::size_t lo = block * kSourceBlock;
      const std::size_t hi = std::min(n, lo + kSourceBlock);
      for (std::size_t s = lo; s < hi; ++s) {
        const auto source = static_cast<NodeIndex>(s);
        if (options.weighted) {
          single_source_weighted(graph, source, ws);
        } else {
          single_source_unweighted(graph, source, ws);
        }
        accumulate(graph, source, options.weighted, ws, partial);
      }
      // Ordered reduction: block b is merged only after blocks 0..b-1.
      std::unique_lock<std::mutex> lock(mu);
      merged_cv.wait(lock, [&] { return merged_upto == block; });
      for (std::size_t v = 0; v < n; ++v) total[v] += partial[v];
      ++merged_upto;
      merged_cv.notify_all();
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  const double scale =
      options.normalized
          ? 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2))
          : 0.5;
  for (double& value : total) value *= scale;
  return total;
}

std::vector<std::size_t> connected_components(const AnalysisGraph& graph) {
  const std::size_t n = graph.num_nodes();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(n, kUnset);
  std::vector<NodeIndex> queue;
  std::size_t next = 0;
  for (NodeIndex root = 0; root < n; ++root) {
    if (label[root] != kUnset) continue;
    label[root] = next;
    queue.assign(1, root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeIndex w : graph.neighbors(queue[head])) {
        if (label[w] == kUnset) {
          label[w] = next;
          queue.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

EigenvectorResult eigenvector_centrality(const AnalysisGraph& graph,
                                         const EigenvectorOptions& options) {
  if (!(options.tol > 0.0)) throw ConfigError("eigenvector tol must be > 0");
  if (options.max_iter < 1) throw ConfigError("eigenvector max_iter must be >= 1");
  const std::size_t n = graph.num_nodes();
  if (n == 0) throw InputError("eigenvector centrality of an empty graph");

  EigenvectorResult result;
  result.scores.assign(n, 0.0);

  const std::vector<std::size_t> label = connected_components(graph);
  const std::size_t num_components =
      *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::size_t> sizes(num_components, 0);
  for (std::size_t c : label) ++sizes[c];
  const std::size_t largest = static_cast<std::size_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  result.disconnected = num_components > 1;
  result.degenerate =
      std::count(sizes.begin(), sizes.end(), sizes[largest]) > 1;

  std::vector<NodeIndex> members;
  std::vector<std::size_t> local(n, 0);
  for (NodeIndex v = 0; v < n; ++v) {
    if (label[v] == largest) {
      local[v] = members.size();
      members.push_back(v);
    }
  }
  const std::size_t m = members.size();

  auto multiply = [&](const std::vector<double>& x, std::vector<double>& out) {
    for (std::size_t i = 0; i < m; ++i) {
      const NodeIndex v = members[i];
      auto nbrs = graph.neighbors(v);
      auto weights = graph.neighbor_weights(v);
      double sum = 0.0;
      for (std::size_t j = 0; j < nbrs.size(); ++j) {
        const double a =
            options.weighted ? static_cast<double>(weights[j]) : 1.0;
        sum += a * x[local[nbrs[j]]];
      }
      out[i] = sum;
    }
  };

  std::vector<double> x(m, 1.0 / std::sqrt(static_cast<double>(m)));
  std::vector<double> ax(m), next(m);
  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    multiply(x, ax);
    double lambda = 0.0;
    for (std::size_t i = 0; i < m; ++i) lambda += x[i] * ax[i];
    residual = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      residual = std::max(residual, std::abs(ax[i] - lambda * x[i]));
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      next[i] = ax[i] + x[i];
      norm += next[i] * next[i];
    }
    norm = std::sqrt(norm);
    double diff = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      next[i] /= norm;
      diff = std::max(diff, std::abs(next[i] - x[i]));
    }
    if (diff < options.tol && residual < options.tol) {
      for (std::size_t i = 0; i < m; ++i) result.scores[members[i]] = x[i];
      result.eigenvalue = lambda;
      result.residual = residual;
      result.iterations = iter;
      return result;
    }
    x.swap(next);
  }

  std::vector<double> last(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) last[members[i]] = x[i];
  throw ConvergenceError("eigenvector power iteration did not converge in " +
                             std::to_string(options.max_iter) + " iterations",
                         std::move(last), residual);
}

std::vector<double> total_degree_centrality(const AnalysisGraph& graph,
                                            bool normalized) {
  const std::size_t n = graph.num_nodes();
  std::vector<double> out(n, 0.0);
  for (NodeIndex v = 0; v < n; ++v) {
    out[v] = static_cast<double>(graph.degree(v));
  }
  if (normalized) {
    if (n <= 1) return std::vector<double>(n, 0.0);
    for (double& d : out) d /= static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace starmotif
