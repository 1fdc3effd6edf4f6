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
#include <vector>

#include "starmotif/graph.hpp"

namespace starmotif {

// All score vectors below are indexed by NodeIndex of the input graph.

struct BetweennessOptions {
  bool normalized = true;
  // Shortest paths over edge length 1/weight instead of hop count.
  bool weighted = false;
  // 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

// Brandes' algorithm. Undirected pair counting (each unordered pair once).
// When normalized, divides by (n-1)(n-2)/2; graphs with n < 3 are all zero.
//
// Sources are processed in fixed-size blocks whose partial sums are merged
// in block order, so the result is bit-identical for any thread count.
std::vector<double> betweenness_centrality(const AnalysisGraph& graph,
                                           const BetweennessOptions& options = {});

struct EigenvectorOptions {
  double tol = 1e-8;
  int max_iter = 1000;
  bool weighted = false;
};

struct EigenvectorResult {
  std::vector<double> scores;
  double eigenvalue = 0.0;
  // ||A x - lambda x||_inf on the scored component.
  double residual = 0.0;
  int iterations = 0;
  // More than one connected component: nodes outside the scored component
  // are zero.
  bool disconnected = false;
  // Two or more largest components tie in size; the one holding the
  // smallest AgentId was scored.
  bool degenerate = false;
};

// Principal eigenvector of the adjacency matrix on the largest connected
// component, by power iteration from the uniform vector. Iterates on A + I,
// which has the same eigenvectors but no -lambda twin, so bipartite
// components (stars, paths) converge. Stops once successive iterates differ
// by < tol in L-inf norm and the eigen-residual is < tol.
//
// Throws ConfigError for tol <= 0 or max_iter < 1, InputError on an empty
// graph and ConvergenceError when max_iter is exhausted.
EigenvectorResult eigenvector_centrality(const AnalysisGraph& graph,
                                         const EigenvectorOptions& options = {});

// degree(v), or degree(v) / (n - 1) when normalized (0 for n == 1).
std::vector<double> total_degree_centrality(const AnalysisGraph& graph,
                                            bool normalized = true);

// Connected-component label per node; labels are numbered in order of each
// component's smallest node index.
std::vector<std::size_t> connected_components(const AnalysisGraph& graph);

}  // namespace starmotif
