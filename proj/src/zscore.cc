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

#include "zgptda/zscore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "zgptda/errors.hpp"

namespace zgptda::zscore {
namespace {

const SetTriple kOneMinusR2AndJs = {{
    {"low", 0.0, 0.05, 0.1, Edge::kZeroPoint},
    {"medium", 0.1, 0.15, 0.2, Edge::kNone},
    {"high", 0.2, 0.6, 1.0, Edge::kRightShoulder},
}};

const SetTriple kKlAndMape = {{
    {"low", 0.0, 0.1, 0.2, Edge::kZeroPoint},
    {"medium", 0.2, 0.35, 0.5, Edge::kNone},
    {"high", 0.5, 0.75, 1.0, Edge::kRightShoulder},
}};

const SetTriple kASets = {{
    {"low", 0.0, 0.0, 0.3, Edge::kLeftShoulder},
    {"medium", 0.2, 0.5, 0.8, Edge::kNone},
    {"high", 0.7, 1.0, 1.0, Edge::kRightShoulder},
}};

const SetTriple kBSets = {{
    {"low", 0.0, 0.0, 0.1, Edge::kLeftShoulder},
    {"medium", 0.0, 0.1, 0.25, Edge::kNone},
    {"high", 0.1, 0.25, 0.5, Edge::kRightShoulder},
}};

const SetTriple kSPrimeSets = {{
    {"low", 0.0, 0.0, 0.35, Edge::kLeftShoulder},
    {"medium", 0.25, 0.5, 0.75, Edge::kNone},
    {"high", 0.65, 1.0, 1.0, Edge::kRightShoulder},
}};

std::array<double, 3> memberships(const SetTriple& sets, double x) {
  return {sets[0].membership(x), sets[1].membership(x),
          sets[2].membership(x)};
}

}  // namespace

double trimf(double x, double a, double b, double c) {
  if (x == b) return 1.0;
  if (x <= a || x >= c) return 0.0;
  if (x < b) return (x - a) / (b - a);
  return (c - x) / (c - b);
}

double FuzzySet::membership(double x) const {
  switch (edge) {
    case Edge::kLeftShoulder:
      if (x <= b) return 1.0;
      break;
    case Edge::kRightShoulder:
      if (x >= b) return 1.0;
      break;
    case Edge::kZeroPoint:
      if (x <= a) return 1.0;
      break;
    case Edge::kNone:
      break;
  }
  return trimf(x, a, b, c);
}

std::string_view metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::kR2:
      return "r2";
    case MetricKind::kKl:
      return "kl";
    case MetricKind::kJs:
      return "js";
    case MetricKind::kMape:
      return "mape";
  }
  return "?";
}

const SetTriple& metric_sets(MetricKind kind) {
  return kind == MetricKind::kR2 || kind == MetricKind::kJs ? kOneMinusR2AndJs
                                                            : kKlAndMape;
}

MetricGrade grade_metric(MetricKind kind, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument("grade_metric: " +
                                std::string(metric_name(kind)) +
                                " must be finite and non-negative");
  }
  const auto& sets = metric_sets(kind);
  const double x =
      kind == MetricKind::kR2 ? std::max(0.0, 1.0 - value) : value;

  MetricGrade g;
  auto mu = memberships(sets, x);
  if (mu[0] + mu[1] + mu[2] == 0.0) {
    // A shared foot: split between the two apexes around x.
    g.interpolated = true;
    for (std::size_t k = 0; k + 1 < sets.size(); ++k) {
      const double lo = sets[k].b;
      const double hi = sets[k + 1].b;
      if (x >= lo && x <= hi) {
        mu[k + 1] = (x - lo) / (hi - lo);
        mu[k] = 1.0 - mu[k + 1];
        break;
      }
    }
  }
  g.low = mu[0];
  g.medium = mu[1];
  g.high = mu[2];

  // Normalize first so a single active set yields its apex exactly.
  const double total = mu[0] + mu[1] + mu[2];
  double centre = 0.0;
  for (std::size_t k = 0; k < 3; ++k) centre += (mu[k] / total) * sets[k].b;
  g.badness =
      std::clamp((centre - sets[0].b) / (sets[2].b - sets[0].b), 0.0, 1.0);
  return g;
}

LawVector law_vector(const fitkit::FitMetrics& m) {
  LawVector v;
  v.a = {grade_metric(MetricKind::kR2, m.r2).badness,
         grade_metric(MetricKind::kKl, m.kl).badness,
         grade_metric(MetricKind::kJs, m.js).badness,
         grade_metric(MetricKind::kMape, m.mape).badness};
  const double mean = (v.a[0] + v.a[1] + v.a[2] + v.a[3]) / 4.0;
  double var = 0.0;
  for (double x : v.a) var += (x - mean) * (x - mean);
  v.b = std::sqrt(var / 4.0);
  return v;
}

ZNumber aggregate(std::span<const LawVector> laws) {
  if (laws.empty()) throw NoSignal("no law could be fitted");
  ZNumber z;
  for (const auto& law : laws) {
    double weighted = 0.0;
    for (std::size_t k = 0; k < 4; ++k) weighted += kWeights[k] * law.a[k];
    z.a_t += std::abs(weighted);
    z.b_t += law.b;
  }
  z.laws_used = laws.size();
  z.a_t /= static_cast<double>(laws.size());
  z.b_t /= static_cast<double>(laws.size());
  return z;
}

const SetTriple& a_sets() { return kASets; }
const SetTriple& b_sets() { return kBSets; }
const SetTriple& s_prime_sets() { return kSPrimeSets; }

const std::vector<Rule>& rule_base() {
  static const std::vector<Rule> rules = {
      {kHigh, {kLow, kMedium, kHigh}, {kHigh}},
      // Medium A_t with high B_t was missing; folded in so the rule is
      // unconditional on B_t.
      {kMedium, {kLow, kMedium, kHigh}, {kMedium}},
      {kLow, {kHigh}, {kLow, kMedium}},
      {kLow, {kLow, kMedium}, {kLow}},
  };
  return rules;
}

Suitability infer_suitability(const ZNumber& z) {
  const double a = std::clamp(z.a_t, 0.0, 1.0);
  const double b = std::clamp(z.b_t, 0.0, kBMax);
  const auto mu_a = memberships(kASets, a);
  const auto mu_b = memberships(kBSets, b);

  Suitability out;
  for (const auto& rule : rule_base()) {
    // Bounded-sum OR. The B_t sets sum to one, so "low or medium" is
    // 1 - high and "any" is exactly 1. Plain max would dip between apexes.
    double b_strength = 0.0;
    for (Level l : rule.b) b_strength += mu_b[l];
    b_strength = std::min(1.0, b_strength);
    const double strength = std::min(mu_a[rule.a], b_strength);
    for (Level l : rule.then) {
      out.activation[l] = std::max(out.activation[l], strength);
    }
  }

  // Integrate on integer grid units so the membership arithmetic is exact
  // and a symmetric output lands exactly on the midpoint.
  constexpr std::size_t kLast = kCentroidGrid - 1;
  constexpr std::size_t kMid = kLast / 2;
  const double unit = static_cast<double>(kLast);
  SetTriple scaled = kSPrimeSets;
  for (auto& set : scaled) {
    set.a = std::round(set.a * unit);
    set.b = std::round(set.b * unit);
    set.c = std::round(set.c * unit);
  }
  std::vector<double> wf(kCentroidGrid);
  double mass = 0.0;
  for (std::size_t i = 0; i < kCentroidGrid; ++i) {
    double f = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      f = std::max(f, std::min(out.activation[k],
                               scaled[k].membership(static_cast<double>(i))));
    }
    wf[i] = (i == 0 || i == kLast) ? 0.5 * f : f;
    mass += wf[i];
  }
  double offset = 0.0;
  for (std::size_t k = 1; k <= kMid; ++k) {
    offset += static_cast<double>(k) * (wf[kMid + k] - wf[kMid - k]);
  }
  // The rule base fires for every input, so mass > 0.
  out.s_prime_centroid =
      mass > 0.0 ? (static_cast<double>(kMid) + offset / mass) / unit : 1.0;
  out.s = std::clamp(1.0 - out.s_prime_centroid, 0.0, 1.0);
  return out;
}

}  // namespace zgptda::zscore
