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

#include "zgptda/compare.hpp"

#include <stdexcept>

#include "zgptda/errors.hpp"

namespace zgptda::compare {

const embedding::EmbeddingProvider& AnalysisParams::embedder() const {
  static const embedding::HashEmbedder fallback;
  return provider ? *provider : fallback;
}

Evaluation evaluate(std::span<const corpus::Document> docs,
                    const AnalysisParams& params) {
  std::vector<corpus::TokenStream> streams;
  streams.reserve(docs.size());
  for (const auto& doc : docs) streams.push_back(corpus::tokenize(doc));
  const auto ts = corpus::concat(streams);

  Evaluation ev;
  ev.documents = docs.size();
  ev.words = ts.words.size();
  ev.sentences = ts.sentences.size();
  ev.reports = laws::evaluate_all(ts, params.laws);

  try {
    const auto series =
        mfdfa::build_series(docs, params.embedder(), params.unit_policy);
    ev.series_unit = series.unit;
    ev.mandelbrot = mfdfa::analyze(series.values, params.mfdfa);
  } catch (const NotFittable& e) {
    ev.mandelbrot.report.reason = e.what();
  }
  ev.reports.push_back(ev.mandelbrot.report);
  return ev;
}

ComparisonReport compare_corpora(std::span<const corpus::Document> a,
                                 std::span<const corpus::Document> b,
                                 const AnalysisParams& params) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("compare_corpora: both corpora must be "
                                "nonempty");
  }
  return {evaluate(a, params), evaluate(b, params)};
}

}  // namespace zgptda::compare
