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

// Fuzzy grading of fit metrics and Z-number suitability inference.

#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "zgptda/fitkit.hpp"

namespace zgptda::zscore {

/// Triangular membership. Zero outside [a, c], one at b, linear in between.
/// a == b or b == c give a vertical edge at the apex.
double trimf(double x, double a, double b, double c);

enum class Edge {
  kNone,
  kLeftShoulder,   // membership 1 for x <= b
  kRightShoulder,  // membership 1 for x >= b
  kZeroPoint,      // trimf, plus membership 1 at x <= a
};

struct FuzzySet {
  std::string_view name;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  Edge edge = Edge::kNone;

  double membership(double x) const;
};

/// Low, Medium, High.
using SetTriple = std::array<FuzzySet, 3>;

enum class MetricKind { kR2, kKl, kJs, kMape };

inline constexpr std::array<MetricKind, 4> kAllMetrics = {
    MetricKind::kR2, MetricKind::kKl, MetricKind::kJs, MetricKind::kMape};

std::string_view metric_name(MetricKind kind);

/// Sets over the graded quantity: 1 - R^2 for kR2, the raw value otherwise.
const SetTriple& metric_sets(MetricKind kind);

struct MetricGrade {
  double low = 0.0;
  double medium = 0.0;
  double high = 0.0;
  double badness = 0.0;  // 0 = best, 1 = worst
  // All three degrees were zero and the grade was interpolated between the
  // neighbouring apexes.
  bool interpolated = false;
};

/// `value` is the metric itself (R^2 is converted internally). Throws
/// std::invalid_argument on negative or non-finite input.
MetricGrade grade_metric(MetricKind kind, double value);

struct LawVector {
  std::array<double, 4> a{};  // badness of R^2, KL, JS, MAPE
  double b = 0.0;             // population std of a
};

LawVector law_vector(const fitkit::FitMetrics& metrics);

inline constexpr std::array<double, 4> kWeights = {0.1, 0.2, 0.2, 0.5};

struct ZNumber {
  double a_t = 0.0;
  double b_t = 0.0;
  std::size_t laws_used = 0;
};

/// Throws NoSignal when `laws` is empty.
ZNumber aggregate(std::span<const LawVector> laws);

// Universes of the inference stage.
const SetTriple& a_sets();
const SetTriple& b_sets();
const SetTriple& s_prime_sets();

inline constexpr double kBMax = 0.5;

enum Level { kLow = 0, kMedium = 1, kHigh = 2 };

/// IF A_t is `a` AND B_t is any of `b` THEN S' is each of `then`.
struct Rule {
  Level a;
  std::vector<Level> b;
  std::vector<Level> then;
};

const std::vector<Rule>& rule_base();

inline constexpr std::size_t kCentroidGrid = 1001;

struct Suitability {
  double s = 0.0;
  double s_prime_centroid = 1.0;
  // Clipping level of each S' set after max aggregation.
  std::array<double, 3> activation{};
};

/// Mamdani min/max inference and centroid defuzzification. Alternatives
/// for B_t inside one rule are OR-ed with the bounded sum. A_t is clamped
/// to [0, 1] and B_t to [0, kBMax].
Suitability infer_suitability(const ZNumber& z);

}  // namespace zgptda::zscore
