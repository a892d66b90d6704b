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

// Multifractal detrended fluctuation analysis of embedded text.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zgptda/corpus.hpp"
#include "zgptda/embedding.hpp"
#include "zgptda/fitkit.hpp"
#include "zgptda/laws.hpp"

namespace zgptda::mfdfa {

inline constexpr std::size_t kMinSeriesLength = 64;
inline constexpr std::size_t kMinScale = 16;
inline constexpr double kVarianceFloor = 1e-30;

enum class UnitPolicy {
  kSentence,
  kWord,
  // Sentences, or words when there are fewer than kMinSeriesLength sentences.
  kSentenceWithWordFallback,
};

struct ScalarSeries {
  std::vector<double> values;
  std::string provider;
  std::string unit;  // "sentence" or "word"
};

/// One scalar per unit: the component mean of the unit's embedding. Units of
/// all documents are concatenated in order; the fallback decision is taken
/// on the total sentence count. Throws NotFittable when there are no units,
/// ProviderError when the provider fails (unit index within its document).
ScalarSeries build_series(std::span<const corpus::Document> docs,
                          const embedding::EmbeddingProvider& provider,
                          UnitPolicy policy =
                              UnitPolicy::kSentenceWithWordFallback);
ScalarSeries build_series(const corpus::Document& doc,
                          const embedding::EmbeddingProvider& provider,
                          UnitPolicy policy =
                              UnitPolicy::kSentenceWithWordFallback);

/// Cumulative sum of deviations from the mean, with a leading zero: n values
/// give n + 1 points. Needs at least two values.
std::vector<double> profile(std::span<const double> values);

/// Twelve log-spaced integer scales in [16, n/4], duplicates removed.
/// Throws NotFittable when n/4 < 16.
std::vector<std::size_t> default_scales(std::size_t n);

/// -10, -9.5, ..., 10.
std::vector<double> default_q_grid();

struct Fluctuation {
  std::vector<std::size_t> scales;
  std::vector<double> q_grid;
  int order = 1;
  // f[i][j] = F_q(s) for q_grid[i], scales[j].
  std::vector<std::vector<double>> f;
  // Windows whose residual variance was numerically zero and got floored.
  std::size_t floored_windows = 0;

  bool floored() const { return floored_windows > 0; }
};

/// Windows of each scale are taken from both ends of the profile, an order-m
/// polynomial is removed from each and the mean squared residuals are
/// combined into F_q(s); q = 0 uses the logarithmic average.
/// Throws std::invalid_argument on scales outside [16, n/4], order outside
/// 1..3 or an empty q grid.
Fluctuation fluctuation(std::span<const double> profile,
                        std::span<const std::size_t> scales,
                        std::span<const double> q_grid, int order = 1);

struct MultifractalSpectrum {
  std::vector<double> q;  // surviving q values
  std::vector<double> h;
  std::vector<double> tau;
  std::vector<double> alpha;
  std::vector<double> f_alpha;
  double delta_alpha = 0.0;
  std::vector<double> dropped_q;
};

inline constexpr double kFractalDimension = 1.0;

/// Throws NotFittable with fewer than three scales or fewer than three q
/// values whose slope is finite.
MultifractalSpectrum spectrum(const Fluctuation& fl);

/// Power-law fit of F_{q_ref}(s) against s. Throws std::invalid_argument
/// when q_ref is not on the grid; NotFittable propagates.
fitkit::LawFit mandelbrot_conformity(const Fluctuation& fl,
                                     double q_ref = 2.0);

struct Options {
  int order = 1;
  std::vector<std::size_t> scales;  // empty: default_scales
  std::vector<double> q_grid;       // empty: default_q_grid
  double q_ref = 2.0;
};

struct Analysis {
  std::size_t length = 0;
  std::optional<Fluctuation> fluctuation;
  std::optional<MultifractalSpectrum> spectrum;
  // Mandelbrot row: series x = scales, y = F_{q_ref}(s).
  laws::LawReport report{.law = fitkit::Law::kMandelbrot};
  // Set when the spectrum could not be formed although the fit could.
  std::string spectrum_reason;
};

/// Runs the full analysis. Never throws NotFittable; short series and
/// degenerate fits are reported through `report.reason`.
Analysis analyze(std::span<const double> values, const Options& options = {});

}  // namespace zgptda::mfdfa
