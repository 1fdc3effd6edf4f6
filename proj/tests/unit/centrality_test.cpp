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

#include <algorithm>
#include <cstring>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "starmotif/centrality.hpp"

namespace starmotif {
namespace {

AnalysisGraph make(std::initializer_list<std::pair<const char*, const char*>> edges,
                   std::initializer_list<const char*> extra = {}) {
  AnalysisGraph::Builder b;
  for (const char* v : extra) b.add_node(AgentId(v));
  for (auto [u, v] : edges) b.add_edge(AgentId(u), AgentId(v), 1);
  return std::move(b).build();
}

double at(const AnalysisGraph& g, const std::vector<double>& values, const char* name) {
  return values[*g.find(AgentId(name))];
}

const AnalysisGraph kPath = make({{"A", "B"}, {"B", "C"}});
const AnalysisGraph kStar4 = make({{"E", "A"}, {"E", "B"}, {"E", "C"}, {"E", "D"}});
const AnalysisGraph kK4 =
    make({{"A", "B"}, {"A", "C"}, {"A", "D"}, {"B", "C"}, {"B", "D"}, {"C", "D"}});

TEST(BetweennessTest, PathMiddleVertex) {
  const auto bc = betweenness_centrality(kPath, {.normalized = false});
  EXPECT_EQ(at(kPath, bc, "B"), 1.0);
  EXPECT_EQ(at(kPath, bc, "A"), 0.0);
  EXPECT_EQ(at(kPath, bc, "C"), 0.0);
  const auto norm = betweenness_centrality(kPath);
  EXPECT_EQ(at(kPath, norm, "B"), 1.0);
}

TEST(BetweennessTest, StarEgoCountsAlterPairs) {
  const auto bc = betweenness_centrality(kStar4, {.normalized = false});
  EXPECT_EQ(at(kStar4, bc, "E"), 6.0);
  for (const char* a : {"A", "B", "C", "D"}) EXPECT_EQ(at(kStar4, bc, a), 0.0);
  EXPECT_EQ(at(kStar4, betweenness_centrality(kStar4), "E"), 1.0);
}

TEST(BetweennessTest, CompleteGraphIsZero) {
  for (double v : betweenness_centrality(kK4, {.normalized = false})) EXPECT_EQ(v, 0.0);
}

TEST(BetweennessTest, TinyGraphsAreZero) {
  const AnalysisGraph pair = make({{"A", "B"}});
  for (double v : betweenness_centrality(pair)) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(betweenness_centrality(AnalysisGraph{}).empty());
}

TEST(BetweennessTest, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 29;
    const double p = 0.05 + 0.05 * static_cast<double>(rng() % 8);
    const auto e = oracle::random_graph(rng, n, p);
    const auto expected = oracle::brute_force_betweenness(e);
    const auto got =
        betweenness_centrality(oracle::to_analysis_graph(e), {.normalized = false});
    ASSERT_EQ(got.size(), n);
    for (std::size_t v = 0; v < n; ++v) EXPECT_NEAR(got[v], expected[v], 1e-9);
  }
}

TEST(BetweennessTest, NormalizedInUnitInterval) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = oracle::to_analysis_graph(oracle::random_graph(rng, 25, 0.15));
    for (double v : betweenness_centrality(g)) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0 + 1e-12);
    }
  }
}

// In a tree every unordered pair at distance d contributes d - 1 internal
// vertices, so the total is the sum of (d - 1) over all pairs.
TEST(BetweennessTest, TreeSumEqualsInternalPathVertices) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng() % 40;
    oracle::EdgeList tree;
    tree.n = n;
    for (std::size_t v = 1; v < n; ++v) tree.edges.emplace_back(rng() % v, v);
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [u, v] : tree.edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    double expected = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<int> dist(n, -1);
      std::vector<std::size_t> queue{s};
      dist[s] = 0;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        for (std::size_t w : adj[queue[h]]) {
          if (dist[w] < 0) {
            dist[w] = dist[queue[h]] + 1;
            queue.push_back(w);
          }
        }
      }
      for (std::size_t t = s + 1; t < n; ++t) expected += dist[t] - 1;
    }
    const auto bc =
        betweenness_centrality(oracle::to_analysis_graph(tree), {.normalized = false});
    EXPECT_NEAR(std::accumulate(bc.begin(), bc.end(), 0.0), expected, 1e-9);
  }
}

TEST(BetweennessTest, BitIdenticalAcrossThreadCounts) {
  std::mt19937_64 rng(31);
  const auto g = oracle::to_analysis_graph(oracle::random_graph(rng, 300, 0.02, 5));
  for (bool weighted : {false, true}) {
    const auto one = betweenness_centrality(g, {.weighted = weighted, .threads = 1});
    for (unsigned t : {2u, 3u, 8u}) {
      const auto many = betweenness_centrality(g, {.weighted = weighted, .threads = t});
      ASSERT_EQ(one.size(), many.size());
      for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(std::memcmp(&one[i], &many[i], sizeof(double)), 0) << "node " << i;
      }
    }
  }
}

TEST(BetweennessTest, WeightedUsesInverseWeightLengths) {
  // A-B-C has length 1/1 + 1/1 = 2 while A-D-C has 1/4 + 1/4. B and D tie
  // at 1.25 on either side of the cycle.
  AnalysisGraph::Builder b;
  b.add_edge(AgentId("A"), AgentId("B"), 1);
  b.add_edge(AgentId("B"), AgentId("C"), 1);
  b.add_edge(AgentId("A"), AgentId("D"), 4);
  b.add_edge(AgentId("D"), AgentId("C"), 4);
  const AnalysisGraph g = std::move(b).build();
  const auto plain = betweenness_centrality(g, {.normalized = false});
  EXPECT_EQ(at(g, plain, "B"), 0.5);
  EXPECT_EQ(at(g, plain, "D"), 0.5);
  const auto weighted = betweenness_centrality(g, {.normalized = false, .weighted = true});
  EXPECT_EQ(at(g, weighted, "D"), 1.0);
  EXPECT_EQ(at(g, weighted, "B"), 0.0);
  EXPECT_EQ(at(g, weighted, "A"), 0.5);
  EXPECT_EQ(at(g, weighted, "C"), 0.5);
}

TEST(BetweennessTest, WeightedWithUnitWeightsMatchesUnweighted) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = oracle::to_analysis_graph(oracle::random_graph(rng, 20, 0.2));
    const auto a = betweenness_centrality(g, {.normalized = false});
    const auto b = betweenness_centrality(g, {.normalized = false, .weighted = true});
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
  }
}

TEST(EigenvectorTest, StarClosedForm) {
  const auto r = eigenvector_centrality(kStar4);
  EXPECT_NEAR(at(kStar4, r.scores, "E"), 1.0 / std::sqrt(2.0), 1e-6);
  for (const char* a : {"A", "B", "C", "D"}) {
    EXPECT_NEAR(at(kStar4, r.scores, a), 1.0 / std::sqrt(8.0), 1e-6);
  }
  EXPECT_NEAR(r.eigenvalue, 2.0, 1e-8);
  EXPECT_FALSE(r.disconnected);
  EXPECT_FALSE(r.degenerate);
}

TEST(EigenvectorTest, TriangleIsUniform) {
  const auto k3 = make({{"A", "B"}, {"B", "C"}, {"A", "C"}});
  const auto r = eigenvector_centrality(k3);
  for (double v : r.scores) EXPECT_NEAR(v, 1.0 / std::sqrt(3.0), 1e-6);
}

TEST(EigenvectorTest, TwoEqualComponentsAreFlaggedDegenerate) {
  const auto g = make({{"A", "B"}, {"C", "D"}});
  const auto r = eigenvector_centrality(g);
  EXPECT_TRUE(r.disconnected);
  EXPECT_TRUE(r.degenerate);
  EXPECT_NEAR(at(g, r.scores, "A"), 1.0 / std::sqrt(2.0), 1e-8);
  EXPECT_NEAR(at(g, r.scores, "B"), 1.0 / std::sqrt(2.0), 1e-8);
  EXPECT_EQ(at(g, r.scores, "C"), 0.0);
  EXPECT_EQ(at(g, r.scores, "D"), 0.0);
}

TEST(EigenvectorTest, LargestComponentOnlyAndFlagged) {
  const auto g = make({{"A", "B"}, {"X", "Y"}, {"Y", "Z"}});
  const auto r = eigenvector_centrality(g);
  EXPECT_TRUE(r.disconnected);
  EXPECT_FALSE(r.degenerate);
  EXPECT_EQ(at(g, r.scores, "A"), 0.0);
  EXPECT_NEAR(at(g, r.scores, "Y"), 1.0 / std::sqrt(2.0), 1e-6);
}

TEST(EigenvectorTest, BipartiteConverges) {
  // Plain power iteration oscillates on bipartite graphs.
  const auto r = eigenvector_centrality(kPath);
  EXPECT_NEAR(at(kPath, r.scores, "B"), 1.0 / std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(at(kPath, r.scores, "A"), 0.5, 1e-6);
}

TEST(EigenvectorTest, BadOptionsAndEmptyGraph) {
  EXPECT_THROW(eigenvector_centrality(kK4, {.tol = 0.0}), ConfigError);
  EXPECT_THROW(eigenvector_centrality(kK4, {.max_iter = 0}), ConfigError);
  EXPECT_THROW(eigenvector_centrality(AnalysisGraph{}), InputError);
}

TEST(EigenvectorTest, NonConvergenceCarriesLastIterate) {
  std::mt19937_64 rng(4);
  const auto g = oracle::to_analysis_graph(oracle::random_graph(rng, 40, 0.1));
  try {
    eigenvector_centrality(g, {.tol = 1e-14, .max_iter = 2});
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.last_iterate().size(), g.num_nodes());
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(EigenvectorTest, SatisfiesEigenRelationAndMatchesDenseOracle) {
  std::mt19937_64 rng(101);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 49;
    const double p = 0.05 + 0.05 * static_cast<double>(rng() % 8);
    const auto e = oracle::random_graph(rng, n, p);
    const auto g = oracle::to_analysis_graph(e);
    const double tol = 1e-8;
    const auto r = eigenvector_centrality(g, {.tol = tol, .max_iter = 100000});

    // ||A x - lambda x||_inf with lambda = x^T A x, over the whole graph.
    std::vector<double> ax(n, 0.0);
    for (auto [u, v] : e.edges) {
      ax[u] += r.scores[v];
      ax[v] += r.scores[u];
    }
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) lambda += r.scores[i] * ax[i];
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(ax[i] - lambda * r.scores[i]));
    }
    EXPECT_LT(worst, 10 * tol);
    for (double v : r.scores) EXPECT_GE(v, 0.0);

    const auto component = oracle::largest_component(e);
    const auto dense = oracle::dense_principal_eigen(e, component);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(r.scores[i], dense.vector[i], 1e-6) << "n=" << n << " node " << i;
    }
    ++checked;
  }
  EXPECT_EQ(checked, 60);
}

TEST(EigenvectorTest, WeightedMatchesDenseOracle) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = oracle::random_graph(rng, 30, 0.2, 9);
    const auto g = oracle::to_analysis_graph(e);
    const auto r = eigenvector_centrality(g, {.max_iter = 100000, .weighted = true});
    const auto dense =
        oracle::dense_principal_eigen(e, oracle::largest_component(e), true);
    for (std::size_t i = 0; i < e.n; ++i) EXPECT_NEAR(r.scores[i], dense.vector[i], 1e-6);
    EXPECT_NEAR(r.eigenvalue, dense.value, 1e-6 * dense.value);
  }
}

TEST(DegreeTest, Examples) {
  for (double v : total_degree_centrality(kK4)) EXPECT_EQ(v, 1.0);
  const auto star = total_degree_centrality(kStar4);
  EXPECT_EQ(at(kStar4, star, "E"), 1.0);
  EXPECT_EQ(at(kStar4, star, "A"), 0.25);
  EXPECT_EQ(at(kStar4, total_degree_centrality(kStar4, false), "E"), 4.0);
  const AnalysisGraph single = make({}, {"solo"});
  EXPECT_EQ(total_degree_centrality(single), std::vector<double>{0.0});
}

// Renaming every node through a random permutation must carry each metric
// along with it.
TEST(CentralityTest, InvariantUnderRelabeling) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 5 + rng() % 25;
    const auto e = oracle::random_graph(rng, n, 0.25);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    oracle::EdgeList relabeled = e;
    for (auto& [u, v] : relabeled.edges) {
      u = perm[u];
      v = perm[v];
      if (u > v) std::swap(u, v);
    }
    const auto g = oracle::to_analysis_graph(e);
    const auto h = oracle::to_analysis_graph(relabeled);
    const auto bg = betweenness_centrality(g);
    const auto bh = betweenness_centrality(h);
    const auto dg = total_degree_centrality(g);
    const auto dh = total_degree_centrality(h);
    const auto cg = oracle::largest_component(e);
    const bool unique_lcc = [&] {
      std::vector<std::size_t> label = connected_components(g);
      std::vector<std::size_t> sizes(n, 0);
      for (auto l : label) ++sizes[l];
      return std::count(sizes.begin(), sizes.end(), cg.size()) == 1;
    }();
    const auto eg = eigenvector_centrality(g, {.max_iter = 100000});
    const auto eh = eigenvector_centrality(h, {.max_iter = 100000});
    for (std::size_t v = 0; v < n; ++v) {
      EXPECT_NEAR(bg[v], bh[perm[v]], 1e-12);
      EXPECT_EQ(dg[v], dh[perm[v]]);
      if (unique_lcc) {
        EXPECT_NEAR(eg.scores[v], eh.scores[perm[v]], 1e-6);
      }
    }
  }
}

TEST(ComponentsTest, LabelsInNodeOrder) {
  const auto g = make({{"A", "B"}, {"C", "D"}}, {"E"});
  EXPECT_EQ(connected_components(g), (std::vector<std::size_t>{0, 0, 1, 1, 2}));
}

}  // namespace
}  // namespace starmotif
