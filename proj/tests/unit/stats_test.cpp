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
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "starmotif/stats.hpp"

namespace starmotif {
namespace {

struct GridCase {
  std::size_t n_a;
  double mean_a, var_a;
  std::size_t n_b;
  double mean_b, var_b;
  double student_t, student_df, student_p;
  double welch_t, welch_df, welch_p;
};

const GridCase kGrid[] = {
#include "oracles/stats_grid.inc"
};

TEST(StatsGridTest, MatchesReferenceToOneE8) {
  for (const GridCase& c : kGrid) {
    const SampleSummary a{c.n_a, c.mean_a, c.var_a};
    const SampleSummary b{c.n_b, c.mean_b, c.var_b};
    const auto s = two_sample_t(a, b, TTestVariant::kStudent);
    EXPECT_NEAR(s.t, c.student_t, 1e-8);
    EXPECT_DOUBLE_EQ(s.df, c.student_df);
    EXPECT_NEAR(t_p_value(s.t, s.df), c.student_p, 1e-8);
    const auto w = two_sample_t(a, b, TTestVariant::kWelch);
    EXPECT_NEAR(w.t, c.welch_t, 1e-8);
    EXPECT_NEAR(w.df, c.welch_df, 1e-8 * c.welch_df);
    EXPECT_NEAR(t_p_value(w.t, w.df), c.welch_p, 1e-8);
  }
}

TEST(TwoSampleTTest, Examples) {
  const std::vector<double> v{1, 2, 3};
  const auto s = SampleSummary::from_values(v);
  const auto r = two_sample_t(s, s);
  EXPECT_EQ(r.t, 0.0);
  EXPECT_EQ(r.df, 4.0);

  const auto big = two_sample_t({10, 1.0, 1.0}, {10, 0.0, 1.0});
  EXPECT_NEAR(big.t, 2.2360679775, 1e-10);
  EXPECT_EQ(big.df, 18.0);
}

TEST(TwoSampleTTest, DegenerateVariance) {
  EXPECT_EQ(two_sample_t({3, 2.0, 0.0}, {4, 2.0, 0.0}).t, 0.0);
  try {
    two_sample_t({3, 2.0, 0.0}, {4, 1.0, 0.0});
    FAIL() << "expected StatisticError";
  } catch (const StatisticError& e) {
    EXPECT_EQ(e.kind(), StatisticError::Kind::kDegenerateVariance);
  }
  EXPECT_THROW(two_sample_t({3, 2.0, 0.0}, {4, 1.0, 0.0}, TTestVariant::kWelch),
               StatisticError);
}

TEST(TwoSampleTTest, InsufficientSample) {
  EXPECT_THROW(two_sample_t({1, 0.0, 0.0}, {4, 1.0, 1.0}), StatisticError);
  const std::vector<double> one{1.0};
  EXPECT_THROW(SampleSummary::from_values(one), StatisticError);
}

TEST(TwoSampleTTest, AntisymmetricUnderSwap) {
  for (const GridCase& c : kGrid) {
    const SampleSummary a{c.n_a, c.mean_a, c.var_a};
    const SampleSummary b{c.n_b, c.mean_b, c.var_b};
    for (auto variant : {TTestVariant::kStudent, TTestVariant::kWelch}) {
      const auto ab = two_sample_t(a, b, variant);
      const auto ba = two_sample_t(b, a, variant);
      EXPECT_NEAR(ab.t, -ba.t, 1e-12);
      EXPECT_NEAR(t_p_value(ab.t, ab.df), t_p_value(ba.t, ba.df), 1e-12);
    }
  }
}

TEST(PValueTest, KnownValues) {
  EXPECT_NEAR(t_p_value(2.0, 18.0), 0.06082146566933253, 1e-12);
  for (double df : {0.5, 1.0, 7.0, 1e6}) EXPECT_EQ(t_p_value(0.0, df), 1.0);
  EXPECT_EQ(t_p_value(std::numeric_limits<double>::infinity(), 5.0), 0.0);
  EXPECT_LT(t_p_value(1e6, 5.0), 1e-25);
  // df = 1 is the Cauchy distribution: p = 1 - 2 atan(|t|) / pi.
  for (double t : {0.1, 1.0, 3.0, 50.0}) {
    EXPECT_NEAR(t_p_value(t, 1.0), 1.0 - 2.0 * std::atan(t) / M_PI, 1e-13);
  }
  // df = 2 has p = 1 - |t| / sqrt(2 + t^2).
  for (double t : {0.1, 1.0, 3.0, 50.0}) {
    EXPECT_NEAR(t_p_value(t, 2.0), 1.0 - t / std::sqrt(2.0 + t * t), 1e-13);
  }
}

TEST(PValueTest, BadDegreesOfFreedom) {
  EXPECT_THROW(t_p_value(1.0, 0.0), InputError);
  EXPECT_THROW(t_p_value(1.0, -3.0), InputError);
  EXPECT_THROW(t_p_value(std::nan(""), 3.0), InputError);
}

TEST(PValueTest, MonotoneDecreasingInAbsT) {
  for (double df : {1.0, 2.5, 10.0, 100.0, 5000.0}) {
    double previous = 1.0;
    for (double t = 0.0; t <= 100.0; t += 0.05) {
      const double p = t_p_value(t, df);
      EXPECT_LE(p, previous);
      EXPECT_EQ(p, t_p_value(-t, df));
      previous = p;
    }
  }
}

TEST(PValueTest, NormalEnvelopeForLargeDf) {
  const boost::math::normal z;
  auto normal_p = [&](double t) {
    return 2.0 * boost::math::cdf(boost::math::complement(z, std::abs(t)));
  };
  for (double df : {32.0, 45.0, 120.0, 1e4}) {
    for (double t = -5.0; t <= 5.0; t += 0.0625) {
      EXPECT_NEAR(t_p_value(t, df), normal_p(t), 0.01) << "t=" << t << " df=" << df;
    }
  }
  // Below df = 32 the exact gap peaks just above 0.01 near |t| = 1.567
  // (0.010489 at df = 30, 0.010152 at df = 31).
  const double peak[] = {0.0104887400554, 0.0101523035611};
  for (int i = 0; i < 2; ++i) {
    const double df = 30.0 + i;
    double worst = 0.0;
    for (double t = 0.0; t <= 5.0; t += 0.0001) {
      worst = std::max(worst, std::abs(t_p_value(t, df) - normal_p(t)));
    }
    EXPECT_NEAR(worst, peak[i], 1e-8) << "df=" << df;
  }
}

TEST(PValueTest, MatchesBoostStudentsT) {
  for (double df : {1.0, 1.5, 2.0, 3.0, 7.0, 18.0, 30.0, 99.0, 500.0, 1e4, 1e6}) {
    const boost::math::students_t dist(df);
    for (double t : {1e-6, 0.01, 0.3, 1.0, 2.0, 2.5, 4.0, 8.0, 20.0, 60.0, 100.0}) {
      const double expected = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
      EXPECT_NEAR(t_p_value(t, df), expected, 1e-12) << "t=" << t << " df=" << df;
    }
  }
}

// Two-tailed p as the numerically integrated tail of the t density.
double quadrature_p(double t, double df) {
  const double log_norm = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                          0.5 * std::log(df * M_PI);
  auto density = [&](double s) {
    return std::exp(log_norm - 0.5 * (df + 1.0) * std::log1p(s * s / df));
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  auto tail = [&](double u) { return density(std::abs(t) + u); };
  return 2.0 * integrator.integrate(tail, 0.0, std::numeric_limits<double>::infinity());
}

TEST(PValueTest, MatchesNumericIntegrationToOneE10) {
  for (double df : {1.0, 2.0, 3.0, 5.0, 10.0, 18.0, 40.0, 100.0, 1000.0}) {
    for (double t : {0.05, 0.5, 1.0, 1.96, 3.0, 5.0, 10.0, 30.0, 100.0}) {
      EXPECT_NEAR(t_p_value(t, df), quadrature_p(t, df), 1e-10)
          << "t=" << t << " df=" << df;
    }
  }
}

TEST(IncompleteBetaTest, MatchesBoostIbeta) {
  for (double a : {0.5, 1.0, 2.5, 9.0, 30.0, 250.0, 5000.0}) {
    for (double b : {0.5, 1.0, 3.0, 40.0}) {
      for (double x : {0.0, 1e-8, 0.01, 0.2, 0.5, 0.8, 0.99, 0.999999, 1.0}) {
        EXPECT_NEAR(regularized_incomplete_beta(a, b, x), boost::math::ibeta(a, b, x), 1e-12)
            << "a=" << a << " b=" << b << " x=" << x;
      }
    }
  }
  EXPECT_THROW(regularized_incomplete_beta(0.0, 1.0, 0.5), InputError);
  EXPECT_THROW(regularized_incomplete_beta(1.0, 1.0, 1.5), InputError);
}

TEST(BonferroniTest, TableValues) {
  EXPECT_NEAR(bonferroni(8.09e-3, 12), 9.708e-2, 1e-15);
  EXPECT_EQ(bonferroni(1.59e-1, 12), 1.0);
  EXPECT_NEAR(bonferroni(2.96e-8, 12), 3.552e-7, 1e-20);
  for (double p : {0.0, 0.01, 0.3, 1.0}) EXPECT_EQ(bonferroni(p, 1), p);
}

TEST(BonferroniTest, NeverDecreasesNeverExceedsOne) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = u(rng);
    const std::size_t m = 1 + rng() % 50;
    const double c = bonferroni(p, m);
    EXPECT_GE(c, p);
    EXPECT_LE(c, 1.0);
  }
  EXPECT_THROW(bonferroni(0.5, 0), ConfigError);
  EXPECT_THROW(bonferroni(1.5, 3), InputError);
}

std::vector<MetricRecord> records(const std::vector<double>& bots,
                                  const std::vector<double>& humans) {
  std::vector<MetricRecord> out;
  int i = 0;
  for (double v : bots) {
    out.push_back({AgentId("b" + std::to_string(i++)), v, v, v, AgentType::kBot});
  }
  for (double v : humans) {
    out.push_back({AgentId("h" + std::to_string(i++)), v, v, v, AgentType::kHuman});
  }
  return out;
}

TEST(CompareTest, EqualMeansAndVariances) {
  const auto r = records({1, 1, 2, 2}, {1, 2, 1, 2});
  const auto results = compare_bots_humans(r, default_metrics(), 3);
  ASSERT_EQ(results.size(), 3u);
  for (const auto& t : results) {
    EXPECT_EQ(t.t_statistic, 0.0);
    EXPECT_EQ(t.p_value, 1.0);
    EXPECT_EQ(t.corrected_p, 1.0);
    EXPECT_FALSE(t.significant);
    EXPECT_EQ(t.bonferroni_m, 3u);
    EXPECT_EQ(t.n_bots, 4u);
  }
  EXPECT_EQ(results[0].metric, "betweenness");
  EXPECT_EQ(results[2].metric, "total_degree");
}

TEST(CompareTest, ConstantGroupsAreDegenerate) {
  const auto r = records({1, 1, 1}, {0, 0, 0});
  EXPECT_THROW(compare_bots_humans(r, default_metrics(), 3), StatisticError);
}

TEST(CompareTest, InsufficientGroupNamesGroup) {
  try {
    compare_bots_humans(records({1}, {1, 2, 3}), default_metrics(), 3);
    FAIL();
  } catch (const StatisticError& e) {
    EXPECT_EQ(e.kind(), StatisticError::Kind::kInsufficientSample);
    EXPECT_NE(std::string(e.what()).find("bot"), std::string::npos);
  }
  try {
    compare_bots_humans(records({1, 2}, {3}), default_metrics(), 3);
    FAIL();
  } catch (const StatisticError& e) {
    EXPECT_NE(std::string(e.what()).find("human"), std::string::npos);
  }
}

TEST(CompareTest, SeparatedGroupsAreSignificant) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> jitter(0.0, 0.05);
  std::vector<double> bots, humans;
  for (int i = 0; i < 30; ++i) bots.push_back(1.0 + jitter(rng));
  for (int i = 0; i < 40; ++i) humans.push_back(jitter(rng));
  const auto r = records(bots, humans);
  const auto results = compare_bots_humans(r, {"eigenvector"}, 12, 1e-6);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_TRUE(results[0].significant);
  EXPECT_GT(results[0].t_statistic, 50.0);

  const auto sa = SampleSummary::from_values(bots);
  const auto sb = SampleSummary::from_values(humans);
  const auto ref = two_sample_t(sa, sb);
  EXPECT_EQ(results[0].t_statistic, ref.t);
  const boost::math::students_t dist(ref.df);
  EXPECT_NEAR(results[0].p_value,
              2.0 * boost::math::cdf(boost::math::complement(dist, ref.t)), 1e-15);
}

TEST(CompareTest, ConfigErrors) {
  const auto r = records({1, 2}, {3, 4});
  EXPECT_THROW(compare_bots_humans(r, {}, 3), ConfigError);
  EXPECT_THROW(compare_bots_humans(r, {"closeness"}, 3), ConfigError);
  EXPECT_THROW(compare_bots_humans(r, default_metrics(), 0), ConfigError);
  EXPECT_THROW(compare_bots_humans(r, default_metrics(), 3, 1.5), ConfigError);
}

TEST(VariantTest, RoundTrip) {
  for (auto v : {TTestVariant::kStudent, TTestVariant::kWelch}) {
    EXPECT_EQ(parse_t_test_variant(to_string(v)), v);
  }
  EXPECT_THROW(parse_t_test_variant("paired"), ConfigError);
}

}  // namespace
}  // namespace starmotif
