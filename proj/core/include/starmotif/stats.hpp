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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "starmotif/types.hpp"

namespace starmotif {

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n - 1 denominator)

  // Throws StatisticError (kInsufficientSample) for fewer than 2 values.
  static SampleSummary from_values(std::span<const double> values);
};

enum class TTestVariant { kStudent, kWelch };

std::string_view to_string(TTestVariant variant);
TTestVariant parse_t_test_variant(std::string_view text);

struct TStatistic {
  double t = 0.0;
  double df = 0.0;
};

// Student: pooled variance, df = n_a + n_b - 2. Welch: Welch-Satterthwaite.
// Zero variance with equal means gives t = 0; with unequal means it throws
// StatisticError (kDegenerateVariance).
TStatistic two_sample_t(const SampleSummary& a, const SampleSummary& b,
                        TTestVariant variant = TTestVariant::kStudent);

// Regularized incomplete beta I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Two-tailed P(|T| >= |t|) for Student's t with `df` degrees of freedom.
// Throws InputError for df <= 0 or NaN t.
double t_p_value(double t, double df);

// min(1, p * m).
double bonferroni(double p, std::size_t m);

struct TestResult {
  std::string metric;
  double t_statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  double corrected_p = 1.0;
  bool significant = false;
  std::size_t bonferroni_m = 1;
  std::size_t n_bots = 0;
  std::size_t n_humans = 0;
  double mean_bots = 0.0;
  double mean_humans = 0.0;
};

struct MetricRecord {
  AgentId id;
  double betweenness = 0.0;
  double eigenvector = 0.0;
  double total_degree = 0.0;
  AgentType agent_type = AgentType::kHuman;

  friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

// Names accepted by compare_bots_humans.
inline constexpr std::string_view kMetricBetweenness = "betweenness";
inline constexpr std::string_view kMetricEigenvector = "eigenvector";
inline constexpr std::string_view kMetricTotalDegree = "total_degree";
const std::vector<std::string>& default_metrics();

double metric_value(const MetricRecord& record, std::string_view metric);

// One t-test per metric, bots as group a and humans as group b, corrected
// with bonferroni(p, m) and flagged significant when corrected_p < alpha.
// Throws StatisticError naming the group when it has fewer than 2 records.
std::vector<TestResult> compare_bots_humans(
    std::span<const MetricRecord> records,
    const std::vector<std::string>& metrics, std::size_t m, double alpha = 0.05,
    TTestVariant variant = TTestVariant::kStudent);

}  // namespace starmotif
