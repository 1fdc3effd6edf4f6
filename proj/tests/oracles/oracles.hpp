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

// Test-only oracles. Everything here works on a plain edge list and a dense
// adjacency matrix, independent of the CSR graph and of the algorithms under
// test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "starmotif/graph.hpp"

namespace starmotif::oracle {

struct EdgeList {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // u < v
  std::vector<Weight> weights;
};

inline std::string node_name(std::size_t i) {
  std::string s = std::to_string(i);
  return "n" + std::string(4 - std::min<std::size_t>(4, s.size()), '0') + s;
}

// G(n, p) with node names n0000, n0001, ... so that node i has NodeIndex i
// once every node is added to the graph.
inline EdgeList random_graph(std::mt19937_64& rng, std::size_t n, double p,
                             Weight max_weight = 1) {
  EdgeList g;
  g.n = n;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<Weight> weight(1, max_weight);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (coin(rng) < p) {
        g.edges.emplace_back(u, v);
        g.weights.push_back(weight(rng));
      }
    }
  }
  return g;
}

inline AnalysisGraph to_analysis_graph(const EdgeList& g) {
  AnalysisGraph::Builder b;
  for (std::size_t i = 0; i < g.n; ++i) b.add_node(AgentId(node_name(i)));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    b.add_edge(AgentId(node_name(g.edges[e].first)),
               AgentId(node_name(g.edges[e].second)),
               g.weights.empty() ? 1 : g.weights[e]);
  }
  return std::move(b).build();
}

inline std::vector<std::vector<int>> adjacency_matrix(const EdgeList& g) {
  std::vector<std::vector<int>> a(g.n, std::vector<int>(g.n, 0));
  for (auto [u, v] : g.edges) a[u][v] = a[v][u] = 1;
  return a;
}

// Betweenness by literal enumeration of every shortest path between every
// unordered pair, counting the fraction that passes through each vertex.
inline std::vector<double> brute_force_betweenness(const EdgeList& g) {
  const std::size_t n = g.n;
  const auto a = adjacency_matrix(g);
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j]) d[i][j] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }

  std::vector<double> bc(n, 0.0);
  std::vector<std::size_t> path;
  std::vector<std::vector<std::size_t>> paths;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      if (d[s][t] >= kInf) continue;
      paths.clear();
      path.assign(1, s);
      // Depth-first walk along edges that decrease the distance to t.
      auto walk = [&](auto&& self, std::size_t v) -> void {
        if (v == t) {
          paths.push_back(path);
          return;
        }
        for (std::size_t w = 0; w < n; ++w) {
          if (a[v][w] && d[w][t] == d[v][t] - 1) {
            path.push_back(w);
            self(self, w);
            path.pop_back();
          }
        }
      };
      walk(walk, s);
      std::vector<double> through(n, 0.0);
      for (const auto& p : paths) {
        for (std::size_t i = 1; i + 1 < p.size(); ++i) through[p[i]] += 1.0;
      }
      for (std::size_t v = 0; v < n; ++v) {
        bc[v] += through[v] / static_cast<double>(paths.size());
      }
    }
  }
  return bc;
}

// Every node's maximal one-hop star tested literally against the three
// constraints: deg(ego) == k, deg_A(alter) <= 2, deg(alter) <= 3 within the
// star subgraph; plus k >= k_min.
inline std::set<std::pair<std::size_t, std::vector<std::size_t>>>
brute_force_stars(const EdgeList& g, std::size_t k_min) {
  const auto a = adjacency_matrix(g);
  std::set<std::pair<std::size_t, std::vector<std::size_t>>> out;
  for (std::size_t ego = 0; ego < g.n; ++ego) {
    std::vector<std::size_t> alters;
    for (std::size_t v = 0; v < g.n; ++v) {
      if (a[ego][v]) alters.push_back(v);
    }
    const std::size_t k = alters.size();
    if (k < k_min) continue;
    // Subgraph on {ego} + alters.
    std::vector<std::size_t> members = alters;
    members.push_back(ego);
    auto degree_in_star = [&](std::size_t v) {
      std::size_t deg = 0;
      for (std::size_t u : members) deg += a[v][u];
      return deg;
    };
    if (degree_in_star(ego) != k) continue;
    bool ok = true;
    for (std::size_t v : alters) {
      std::size_t alter_links = 0;
      for (std::size_t u : alters) alter_links += a[v][u];
      if (alter_links > 2 || degree_in_star(v) > 3) ok = false;
    }
    if (ok) out.emplace(ego, alters);
  }
  return out;
}

struct DenseEigen {
  std::vector<double> vector;  // over all n nodes, zero off-component
  double value = 0.0;
};

// Principal eigenpair of the (optionally weighted) adjacency matrix
// restricted to `component`, by dense symmetric eigendecomposition.
inline DenseEigen dense_principal_eigen(const EdgeList& g,
                                        const std::vector<std::size_t>& component,
                                        bool weighted = false) {
  const Eigen::Index m = static_cast<Eigen::Index>(component.size());
  std::vector<Eigen::Index> local(g.n, -1);
  for (Eigen::Index i = 0; i < m; ++i) local[component[i]] = i;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (local[u] < 0 || local[v] < 0) continue;
    const double w = weighted ? static_cast<double>(g.weights[e]) : 1.0;
    a(local[u], local[v]) = a(local[v], local[u]) = w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  DenseEigen out;
  out.vector.assign(g.n, 0.0);
  const Eigen::VectorXd x = solver.eigenvectors().col(m - 1);
  const double sign = x.sum() < 0 ? -1.0 : 1.0;
  for (Eigen::Index i = 0; i < m; ++i) out.vector[component[i]] = sign * x(i);
  out.value = solver.eigenvalues()(m - 1);
  return out;
}

// Largest connected component by union-find; ties go to the component with
// the smallest node.
inline std::vector<std::size_t> largest_component(const EdgeList& g) {
  std::vector<std::size_t> parent(g.n);
  for (std::size_t i = 0; i < g.n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : g.edges) {
    const std::size_t ru = find(u), rv = find(v);
    if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
  }
  std::vector<std::size_t> size(g.n, 0);
  for (std::size_t i = 0; i < g.n; ++i) ++size[find(i)];
  std::size_t best = 0;
  for (std::size_t r = 0; r < g.n; ++r) {
    if (size[r] > size[best]) best = r;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.n; ++i) {
    if (find(i) == best) out.push_back(i);
  }
  return out;
}

}  // namespace starmotif::oracle
