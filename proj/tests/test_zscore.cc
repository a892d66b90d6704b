// Copyright 2026 The zgptda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "zgptda/errors.hpp"
#include "zgptda/zscore.hpp"

namespace zgptda::zscore {
namespace {

TEST(Trimf, ApexFeetAndSlopes) {
  EXPECT_EQ(trimf(0.15, 0.1, 0.15, 0.2), 1.0);
  EXPECT_EQ(trimf(0.1, 0.1, 0.15, 0.2), 0.0);
  EXPECT_EQ(trimf(0.2, 0.1, 0.15, 0.2), 0.0);
  EXPECT_EQ(trimf(-5, 0.1, 0.15, 0.2), 0.0);
  EXPECT_EQ(trimf(5, 0.1, 0.15, 0.2), 0.0);
  EXPECT_NEAR(trimf(0.125, 0.1, 0.15, 0.2), 0.5, 1e-12);
  EXPECT_NEAR(trimf(0.5, 0.2, 0.6, 1.0), 0.75, 1e-12);
  EXPECT_NEAR(trimf(0.9, 0.2, 0.6, 1.0), 0.25, 1e-12);
}

TEST(Trimf, PiecewiseLinearSweep) {
  for (int i = 0; i <= 1000; ++i) {
    const double x = -0.1 + 1.2 * i / 1000.0;
    const double expected =
        std::max(0.0, std::min((x - 0.2) / 0.3, (0.8 - x) / 0.3));
    EXPECT_NEAR(trimf(x, 0.2, 0.5, 0.8), expected, 1e-12);
  }
}

TEST(GradeMetric, ApexBreakpoints) {
  const auto g = grade_metric(MetricKind::kR2, 0.85);
  EXPECT_NEAR(g.medium, 1.0, 1e-12);
  EXPECT_NEAR(g.low, 0.0, 1e-12);
  EXPECT_NEAR(g.high, 0.0, 1e-12);
  EXPECT_EQ(grade_metric(MetricKind::kJs, 0.05).low, 1.0);
  EXPECT_EQ(grade_metric(MetricKind::kKl, 0.35).medium, 1.0);
  EXPECT_EQ(grade_metric(MetricKind::kMape, 0.75).high, 1.0);
  EXPECT_EQ(grade_metric(MetricKind::kKl, 0.1).low, 1.0);
}

TEST(GradeMetric, EdgesAndClamping) {
  const auto zero = grade_metric(MetricKind::kKl, 0.0);
  EXPECT_EQ(zero.low, 1.0);
  EXPECT_EQ(zero.badness, 0.0);
  EXPECT_EQ(trimf(0.0, 0.0, 0.1, 0.2), 0.0);
  const auto off = grade_metric(MetricKind::kKl, 2.0);
  EXPECT_EQ(off.high, 1.0);
  EXPECT_EQ(off.badness, 1.0);
  EXPECT_EQ(grade_metric(MetricKind::kR2, 1.0).badness, 0.0);
  EXPECT_EQ(grade_metric(MetricKind::kR2, 0.0).badness, 1.0);
}

TEST(GradeMetric, DeadPointsInterpolated) {
  const auto g = grade_metric(MetricKind::kJs, 0.1);
  EXPECT_TRUE(g.interpolated);
  EXPECT_NEAR(g.low, 0.5, 1e-12);
  EXPECT_NEAR(g.medium, 0.5, 1e-12);
  const auto k = grade_metric(MetricKind::kKl, 0.2);
  EXPECT_TRUE(k.interpolated);
  EXPECT_NEAR(k.medium, 0.4, 1e-12);
  EXPECT_FALSE(grade_metric(MetricKind::kKl, 0.3).interpolated);
}

TEST(GradeMetric, RejectsBadInput) {
  EXPECT_THROW(grade_metric(MetricKind::kKl, -0.1), std::invalid_argument);
  EXPECT_THROW(grade_metric(MetricKind::kJs, NAN), std::invalid_argument);
}

TEST(GradeMetric, BadnessMonotoneSweep) {
  for (MetricKind kind : kAllMetrics) {
    const double apex = metric_sets(kind)[2].b;
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = apex * i / 1000.0;
      const double value = kind == MetricKind::kR2 ? 1.0 - x : x;
      const auto g = grade_metric(kind, std::max(0.0, value));
      EXPECT_GE(g.badness, prev - 1e-12) << metric_name(kind) << " x=" << x;
      EXPECT_GE(g.badness, 0.0);
      EXPECT_LE(g.badness, 1.0);
      for (double d : {g.low, g.medium, g.high}) {
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 1.0);
      }
      prev = g.badness;
    }
  }
}

TEST(LawVector, Examples) {
  const auto perfect = law_vector({1.0, 0.0, 0.0, 0.0});
  EXPECT_EQ(perfect.a, (std::array<double, 4>{0, 0, 0, 0}));
  EXPECT_EQ(perfect.b, 0.0);
  const auto worst_mape = law_vector({1.0, 0.0, 0.0, 5.0});
  EXPECT_EQ(worst_mape.a, (std::array<double, 4>{0, 0, 0, 1}));
  EXPECT_NEAR(worst_mape.b, std::sqrt(3.0) / 4.0, 1e-12);
}

TEST(Aggregate, Examples) {
  std::vector<LawVector> perfect(8);
  const auto z = aggregate(perfect);
  EXPECT_EQ(z.a_t, 0.0);
  EXPECT_EQ(z.b_t, 0.0);
  EXPECT_EQ(z.laws_used, 8u);
  const LawVector flat{{0.2, 0.2, 0.2, 0.2}, 0.0};
  EXPECT_NEAR(aggregate(std::vector<LawVector>{flat}).a_t, 0.2, 1e-12);
  const LawVector lo{{0.1, 0.1, 0.1, 0.1}, 0.1};
  const LawVector hi{{0.3, 0.3, 0.3, 0.3}, 0.3};
  const auto two = aggregate(std::vector<LawVector>{lo, hi});
  EXPECT_NEAR(two.a_t, 0.2, 1e-12);
  EXPECT_NEAR(two.b_t, 0.2, 1e-12);
  EXPECT_THROW(aggregate(std::vector<LawVector>{}), NoSignal);
}

TEST(Aggregate, PermutationInvariant) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<LawVector> v(6);
  for (auto& l : v) {
    for (double& x : l.a) x = u(rng);
    l.b = u(rng);
  }
  const auto z = aggregate(v);
  for (int k = 0; k < 20; ++k) {
    std::shuffle(v.begin(), v.end(), rng);
    const auto p = aggregate(v);
    EXPECT_NEAR(p.a_t, z.a_t, 1e-12);
    EXPECT_NEAR(p.b_t, z.b_t, 1e-12);
  }
}

TEST(Inference, MatchesReferenceOnGrid) {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double a = i / 20.0;
      const double b = j / 40.0;
      EXPECT_NEAR(infer_suitability({a, b, 1}).s,
                  oracle::reference_suitability(a, b), 1e-12)
          << a << "," << b;
    }
  }
}

TEST(Inference, PinnedAnchors) {
  struct Anchor {
    double a, b, s;
  };
  const Anchor anchors[] = {
      {0, 0, 0.8833342857142857},    {1, 0, 0.11666571428571426},
      {1, 0.5, 0.11666571428571426}, {0.5, 0.1, 0.5},
      {0.25, 0.3, 0.6353189460807172}, {0.75, 0.2, 0.36468105391928285},
      {0, 0.5, 0.6569449386149695},
  };
  for (const auto& x : anchors) {
    EXPECT_NEAR(infer_suitability({x.a, x.b, 1}).s, x.s, 1e-9);
  }
  EXPECT_GE(infer_suitability({0, 0, 1}).s, 0.85);
}

TEST(Inference, WorstCaseBounded) {
  for (int j = 0; j <= 100; ++j) {
    EXPECT_LE(infer_suitability({1.0, j / 100.0, 1}).s, 0.15);
  }
  EXPECT_LE(infer_suitability({3.0, 9.0, 1}).s, 0.15);
}

TEST(Inference, MonotoneGrid) {
  std::size_t violations = 0;
  for (int j = 0; j <= 100; ++j) {
    double prev = 2.0;
    for (int i = 0; i <= 100; ++i) {
      const auto r = infer_suitability({i / 100.0, j / 100.0 * kBMax, 1});
      EXPECT_GE(r.s, 0.0);
      EXPECT_LE(r.s, 1.0);
      EXPECT_NEAR(r.s, 1.0 - r.s_prime_centroid, 1e-15);
      if (r.s > prev) ++violations;
      prev = r.s;
    }
  }
  EXPECT_EQ(violations, 0u);
}

TEST(Inference, RuleBaseCoversGrid) {
  bool covered[3][3] = {};
  for (const auto& r : rule_base()) {
    for (Level b : r.b) covered[r.a][b] = true;
  }
  for (auto& row : covered) {
    for (bool c : row) EXPECT_TRUE(c);
  }
}

}  // namespace
}  // namespace zgptda::zscore
