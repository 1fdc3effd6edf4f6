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

#include "starmotif/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace starmotif {
namespace {

constexpr int kMinCfIterations = 300;
constexpr double kCfEpsilon = 1e-14;
constexpr double kTiny = 1e-300;

// S(z) in lgamma(z) ~ (z - 1/2) ln z - z + ln(2 pi)/2 + S(z).
double stirling_tail(double z) {
  const double z2 = z * z;
  return (1.0 / 12.0 -
          (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * z2)) / z2) / z2) /
         z;
}

// lgamma(x + d) - lgamma(x) without cancellation, for x >= 20.
double log_gamma_ratio(double x, double d) {
  return (x - 0.5) * std::log1p(d / x) + d * std::log(x + d) - d +
         stirling_tail(x + d) - stirling_tail(x);
}

double log_beta(double a, double b) {
  const double big = std::max(a, b);
  const double small = std::min(a, b);
  if (big < 20.0) return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return std::lgamma(small) - log_gamma_ratio(big, small);
}

// The continued fraction converges in O(sqrt(max(a, b))) steps near the
// distribution's bulk; the floor of 300 covers every df below ~ 1e4.
int cf_iteration_cap(double a, double b) {
  const double scaled = 10.0 * std::sqrt(std::max(a, b));
  return std::max(kMinCfIterations, static_cast<int>(std::ceil(scaled)));
}

// Modified Lentz evaluation of the incomplete-beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  const int cap = cf_iteration_cap(a, b);
  for (int m = 1; m <= cap; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kCfEpsilon) return h;
  }
  throw ConvergenceError("incomplete beta continued fraction did not converge",
                         {h}, std::numeric_limits<double>::quiet_NaN());
}

// I_x(a, b) with y = 1 - x supplied separately to keep precision near 1.
double incomplete_beta(double a, double b, double x, double y) {
  if (x <= 0.0) return 0.0;
  if (y <= 0.0) return 1.0;
  const double log_x = x > 0.5 ? std::log1p(-y) : std::log(x);
  const double log_y = y > 0.5 ? std::log1p(-x) : std::log(y);
  const double front = std::exp(a * log_x + b * log_y - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

}  // namespace

SampleSummary SampleSummary::from_values(std::span<const double> values) {
  if (values.size() < 2) {
    throw StatisticError(StatisticError::Kind::kInsufficientSample,
                         "a sample needs at least 2 values, got " +
                             std::to_string(values.size()));
  }
  SampleSummary s;
  s.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.variance = ss / static_cast<double>(s.n - 1);
  return s;
}

std::string_view to_string(TTestVariant variant) {
  return variant == TTestVariant::kStudent ? "student" : "welch";
}

TTestVariant parse_t_test_variant(std::string_view text) {
  if (text == "student") return TTestVariant::kStudent;
  if (text == "welch") return TTestVariant::kWelch;
  throw ConfigError("unknown t-test variant '" + std::string(text) + "'");
}

TStatistic two_sample_t(const SampleSummary& a, const SampleSummary& b,
                        TTestVariant variant) {
  if (a.n < 2 || b.n < 2) {
    throw StatisticError(StatisticError::Kind::kInsufficientSample,
                         "both samples need n >= 2");
  }
  if (!(a.variance >= 0.0) || !(b.variance >= 0.0) ||
      !std::isfinite(a.variance) || !std::isfinite(b.variance)) {
    throw InputError("sample variance must be finite and >= 0");
  }
  const double na = static_cast<double>(a.n);
  const double nb = static_cast<double>(b.n);
  const double diff = a.mean - b.mean;

  double se2 = 0.0;
  TStatistic out;
  if (variant == TTestVariant::kStudent) {
    const double pooled =
        ((na - 1.0) * a.variance + (nb - 1.0) * b.variance) / (na + nb - 2.0);
    se2 = pooled * (1.0 / na + 1.0 / nb);
    out.df = na + nb - 2.0;
  } else {
    const double va = a.variance / na;
    const double vb = b.variance / nb;
    se2 = va + vb;
    out.df = se2 > 0.0
                 ? se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0))
                 : na + nb - 2.0;
  }
  if (se2 == 0.0) {
    if (diff == 0.0) return out;
    throw StatisticError(StatisticError::Kind::kDegenerateVariance,
                         "zero variance in both samples with unequal means");
  }
  out.t = diff / std::sqrt(se2);
  return out;
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw InputError("incomplete beta requires a > 0 and b > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InputError("incomplete beta requires x in [0, 1]");
  }
  return incomplete_beta(a, b, x, 1.0 - x);
}

double t_p_value(double t, double df) {
  if (!(df > 0.0)) throw InputError("degrees of freedom must be > 0");
  if (std::isnan(t)) throw InputError("t statistic is NaN");
  if (t == 0.0) return 1.0;
  if (std::isinf(t)) return 0.0;
  const double t2 = t * t;
  const double x = df / (df + t2);
  const double y = t2 / (df + t2);
  return std::clamp(incomplete_beta(0.5 * df, 0.5, x, y), 0.0, 1.0);
}

double bonferroni(double p, std::size_t m) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("p-value must lie in [0, 1]");
  if (m < 1) throw ConfigError("Bonferroni m must be >= 1");
  return std::min(1.0, p * static_cast<double>(m));
}

const std::vector<std::string>& default_metrics() {
  static const std::vector<std::string> kMetrics = {
      std::string(kMetricBetweenness), std::string(kMetricEigenvector),
      std::string(kMetricTotalDegree)};
  return kMetrics;
}

double metric_value(const MetricRecord& record, std::string_view metric) {
  if (metric == kMetricBetweenness) return record.betweenness;
  if (metric == kMetricEigenvector) return record.eigenvector;
  if (metric == kMetricTotalDegree) return record.total_degree;
  throw ConfigError("unknown metric '" + std::string(metric) + "'");
}

std::vector<TestResult> compare_bots_humans(
    std::span<const MetricRecord> records,
    const std::vector<std::string>& metrics, std::size_t m, double alpha,
    TTestVariant variant) {
  if (metrics.empty()) throw ConfigError("no metrics to compare");
  if (m < 1) throw ConfigError("Bonferroni m must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  for (const std::string& metric : metrics) metric_value(MetricRecord{}, metric);

  std::size_t bots = 0;
  for (const MetricRecord& r : records) bots += r.agent_type == AgentType::kBot;
  const std::size_t humans = records.size() - bots;
  if (bots < 2) {
    throw StatisticError(StatisticError::Kind::kInsufficientSample,
                         "bot group has " + std::to_string(bots) +
                             " records; at least 2 are required");
  }
  if (humans < 2) {
    throw StatisticError(StatisticError::Kind::kInsufficientSample,
                         "human group has " + std::to_string(humans) +
                             " records; at least 2 are required");
  }

  std::vector<TestResult> results;
  std::vector<double> bot_values, human_values;
  for (const std::string& metric : metrics) {
    bot_values.clear();
    human_values.clear();
    for (const MetricRecord& r : records) {
      (r.agent_type == AgentType::kBot ? bot_values : human_values)
          .push_back(metric_value(r, metric));
    }
    const SampleSummary a = SampleSummary::from_values(bot_values);
    const SampleSummary b = SampleSummary::from_values(human_values);
    const TStatistic stat = two_sample_t(a, b, variant);

    TestResult result;
    result.metric = metric;
    result.t_statistic = stat.t;
    result.df = stat.df;
    result.p_value = t_p_value(stat.t, stat.df);
    result.corrected_p = bonferroni(result.p_value, m);
    result.significant = result.corrected_p < alpha;
    result.bonferroni_m = m;
    result.n_bots = a.n;
    result.n_humans = b.n;
    result.mean_bots = a.mean;
    result.mean_humans = b.mean;
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace starmotif
