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

// Corpus-level evaluation on all eight laws.

#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "zgptda/corpus.hpp"
#include "zgptda/embedding.hpp"
#include "zgptda/laws.hpp"
#include "zgptda/mfdfa.hpp"

namespace zgptda::compare {

struct AnalysisParams {
  laws::Params laws;
  mfdfa::Options mfdfa;
  mfdfa::UnitPolicy unit_policy = mfdfa::UnitPolicy::kSentenceWithWordFallback;
  // Null selects HashEmbedder.
  std::shared_ptr<const embedding::EmbeddingProvider> provider;

  const embedding::EmbeddingProvider& embedder() const;
};

struct Evaluation {
  std::size_t documents = 0;
  std::size_t words = 0;
  std::size_t sentences = 0;
  // Eight reports in fitkit::kAllLaws order.
  std::vector<laws::LawReport> reports;
  mfdfa::Analysis mandelbrot;
  std::string series_unit;  // empty when no series could be built
};

/// Each document is tokenized on its own and the streams concatenated; the
/// MFDFA series runs over the units of all documents in order.
/// ProviderError propagates.
Evaluation evaluate(std::span<const corpus::Document> docs,
                    const AnalysisParams& params = {});

struct ComparisonReport {
  Evaluation a;
  Evaluation b;
};

/// Throws std::invalid_argument when either corpus is empty.
ComparisonReport compare_corpora(std::span<const corpus::Document> a,
                                 std::span<const corpus::Document> b,
                                 const AnalysisParams& params = {});

}  // namespace zgptda::compare
