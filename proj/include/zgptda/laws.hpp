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

// Empirical series for the seven token-level scaling laws. Each builder is a
// pure function of the token stream; fitting happens in evaluate_all.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zgptda/corpus.hpp"
#include "zgptda/fitkit.hpp"

namespace zgptda::laws {

using corpus::TokenStream;
using fitkit::EmpiricalSeries;

struct Params {
  std::size_t taylor_segment_len = 100;
  std::size_t hilberg_max_block = 6;
};

struct LawReport {
  fitkit::Law law = fitkit::Law::kZipf;
  EmpiricalSeries series;
  std::optional<fitkit::LawFit> fit;
  // Why the law could not be fitted; empty when fittable.
  std::string reason;

  bool fittable() const { return fit.has_value(); }
};

/// Rank/frequency. Ties in frequency keep first-occurrence order.
EmpiricalSeries zipf_series(const TokenStream& ts);

/// Vocabulary size after every ceil(N/200)-th token.
EmpiricalSeries heaps_series(const TokenStream& ts);

/// Mean vs population standard deviation of per-segment word counts, for
/// words present in at least two segments. Zero-deviation words are left
/// out; points with the same mean are merged by averaging their deviations.
/// Empty when the text has fewer than three segments.
EmpiricalSeries taylor_series(const TokenStream& ts,
                              std::size_t segment_len = 100);

/// Plug-in Shannon entropy (nats) of overlapping word n-grams, n = 1..max.
EmpiricalSeries hilberg_series(const TokenStream& ts,
                               std::size_t max_block = 6);

/// Window lengths 2, 4, 8, ... up to floor(chars / 8).
std::vector<std::size_t> ebeling_lengths(std::size_t n_chars);

/// Summed per-character variance of counts over non-overlapping windows.
EmpiricalSeries ebeling_series(const TokenStream& ts);
EmpiricalSeries ebeling_series(const TokenStream& ts,
                               std::span<const std::size_t> lengths);

/// Mean word length (letters) grouped by sentence length (words).
EmpiricalSeries menzerath_series(const TokenStream& ts);

/// Relative frequency of the leading digit of sentence lengths, d = 1..9.
EmpiricalSeries benford_series(const TokenStream& ts);

/// Fits one series with the estimator its law uses; never throws
/// NotFittable, the failure is recorded in the report instead.
LawReport fit_report(EmpiricalSeries series);

/// The seven token-level laws, in fitkit::kAllLaws order (Mandelbrot is
/// produced by mfdfa).
std::vector<LawReport> evaluate_all(const TokenStream& ts,
                                    const Params& params = {});

}  // namespace zgptda::laws
