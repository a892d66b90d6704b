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

// Paraphrase generation, scaling-law scoring and selection.

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zgptda/compare.hpp"
#include "zgptda/corpus.hpp"
#include "zgptda/errors.hpp"
#include "zgptda/laws.hpp"
#include "zgptda/transport.hpp"
#include "zgptda/zscore.hpp"

namespace zgptda::augment {

using corpus::Document;

extern const char* const kDefaultPromptTemplate;

struct GenerationConfig {
  std::size_t n_instances = 10;
  // {n} and {text} are substituted.
  std::string prompt_template = kDefaultPromptTemplate;
  double top_fraction = 0.5;
  std::string model = "gpt-4";
  double temperature = 0.7;
  std::uint64_t seed = 0;
  std::size_t max_in_flight = 4;
  transport::RetryPolicy retry;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

std::string render_prompt(const std::string& tmpl, std::string_view text,
                          std::size_t n);

/// Transport failure after retries. Holds every instance obtained so far.
class PartialGeneration : public Error {
 public:
  PartialGeneration(const std::string& what, std::vector<Document> obtained)
      : Error(what), obtained_(std::move(obtained)) {}
  const std::vector<Document>& obtained() const { return obtained_; }

 private:
  std::vector<Document> obtained_;
};

struct Generation {
  std::vector<Document> instances;  // slot order
  std::vector<std::string> warnings;
};

/// One request per slot k = 1..n, at most cfg.max_in_flight at a time.
/// Instance ids are "{raw.id}#gen{k}". Empty completions are retried once
/// and then dropped with a warning.
Generation generate_instances(const Document& raw, const GenerationConfig& cfg,
                              transport::Transport& transport,
                              const transport::Sleeper& sleep = {});

struct ScoredInstance {
  Document instance;
  std::vector<laws::LawReport> law_reports;  // 8, fitkit::kAllLaws order
  std::vector<zscore::LawVector> law_vectors;  // fittable laws only
  std::optional<zscore::ZNumber> z;            // empty: no law fitted
  zscore::Suitability suitability;
  std::vector<std::string> excluded_laws;
  std::size_t rank = 0;  // 1-based, set by rank_instances
};

ScoredInstance score_instance(const Document& instance,
                              const compare::AnalysisParams& params = {});

/// Natural ordering of ids: digit runs compare by value.
bool id_less(std::string_view a, std::string_view b);

/// Sorts by descending suitability, ties by id, and assigns ranks.
void rank_instances(std::vector<ScoredInstance>& instances);

/// ceil(fraction * n), at least 1 and at most n.
std::size_t selection_count(std::size_t n, double fraction);

/// Ranks `instances` and returns the selected prefix.
std::vector<ScoredInstance> select_augmented(
    std::vector<ScoredInstance> instances, double top_fraction);

struct AugmentationRun {
  Document raw;
  std::vector<ScoredInstance> instances;  // rank order
  std::size_t selected_count = 0;
  std::vector<std::string> warnings;

  std::span<const ScoredInstance> selected() const {
    return std::span(instances).first(selected_count);
  }
};

/// Generates, scores and ranks the instances of one raw example.
AugmentationRun augment_one(const Document& raw, const GenerationConfig& cfg,
                            transport::Transport& transport,
                            const compare::AnalysisParams& params = {},
                            const transport::Sleeper& sleep = {});

/// Raised by augment_all when a raw example's generation fails. `completed`
/// holds the runs that finished before it.
class PartialAugmentation : public Error {
 public:
  PartialAugmentation(const std::string& what,
                      std::vector<AugmentationRun> completed)
      : Error(what), completed_(std::move(completed)) {}
  const std::vector<AugmentationRun>& completed() const { return completed_; }

 private:
  std::vector<AugmentationRun> completed_;
};

std::vector<AugmentationRun> augment_all(
    std::span<const Document> raws, const GenerationConfig& cfg,
    transport::Transport& transport,
    const compare::AnalysisParams& params = {},
    const transport::Sleeper& sleep = {});

/// JSON Lines: every raw, then the selected instances of each run, with
/// "origin", "source_id" and (for augmented records) "suitability".
std::string render_dataset(std::span<const Document> raws,
                           std::span<const AugmentationRun> runs);

/// render_dataset written atomically. Throws before writing on duplicate ids
/// or a run whose raw is missing from `raws`.
void emit_dataset(std::span<const Document> raws,
                  std::span<const AugmentationRun> runs,
                  const std::filesystem::path& path);

}  // namespace zgptda::augment
