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

// Power-law regression and goodness-of-fit metrics shared by every law.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace zgptda::fitkit {

enum class Law {
  kZipf,
  kHeaps,
  kTaylor,
  kHilberg,
  kEbeling,
  kMenzerath,
  kBenford,
  kMandelbrot,
};

inline constexpr std::array<Law, 8> kAllLaws = {
    Law::kZipf,    Law::kHeaps,     Law::kTaylor,  Law::kHilberg,
    Law::kEbeling, Law::kMenzerath, Law::kBenford, Law::kMandelbrot,
};

std::string_view law_name(Law law);
std::optional<Law> law_from_name(std::string_view name);

/// Observations for one law. x strictly increasing and positive, y >= 0.
struct EmpiricalSeries {
  Law law = Law::kZipf;
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
  /// Throws std::invalid_argument if the invariants do not hold.
  void validate() const;
};

struct FitMetrics {
  double r2 = 0.0;    // clamped to [0, 1]
  double kl = 0.0;    // nats
  double js = 0.0;    // normalized by ln 2, in [0, 1]
  double mape = 0.0;  // fraction, not percent
};

// Acceptance thresholds for each metric.
inline constexpr double kR2Threshold = 0.9;    // pass when r2 > 0.9
inline constexpr double kKlThreshold = 0.5;    // pass when kl < 0.5
inline constexpr double kJsThreshold = 0.2;    // pass when js < 0.2
inline constexpr double kMapeThreshold = 0.5;  // pass when mape < 0.5

struct ConformityVerdict {
  bool r2 = false;
  bool kl = false;
  bool js = false;
  bool mape = false;

  bool all() const { return r2 && kl && js && mape; }
};

ConformityVerdict verdict(const FitMetrics& m);

struct LawFit {
  double exponent = 0.0;
  // Benford's second shape parameter (omega); empty for pure power laws.
  std::optional<double> secondary_exponent;
  double prefactor = 1.0;
  std::vector<double> fitted_y;  // one per point of the source series
  FitMetrics metrics;
};

/// Additive smoothing applied to probability vectors before KL/JS.
inline constexpr double kSmoothingEpsilon = 1e-12;

/// Minimum number of positive points a fit needs.
inline constexpr std::size_t kMinFitPoints = 3;

/// OLS of ln y on ln x over the points with y > 0. The exponent is the slope
/// and the prefactor exp(intercept). fitted_y covers every source point.
/// Throws NotFittable with fewer than three positive points.
LawFit fit_loglog(const EmpiricalSeries& series);

/// Fits f(d) = C * exp(-kappa d) * d^(omega - 1) to nine first-digit
/// frequencies by OLS of ln f on [1, d, ln d]. exponent = kappa,
/// secondary_exponent = omega. Zero bins are smoothed before the log; the
/// fitted curve is renormalized to sum to one. Throws NotFittable when the
/// frequencies carry no mass.
LawFit fit_benford(std::span<const double> freqs);

/// R^2 on raw values, KL and JS on the normalized (smoothed) vectors, MAPE
/// over points with nonzero observations. Throws std::invalid_argument on
/// length mismatch, fewer than two points, negative entries or an all-zero
/// observed vector.
FitMetrics fit_metrics(std::span<const double> observed,
                       std::span<const double> fitted);

}  // namespace zgptda::fitkit
