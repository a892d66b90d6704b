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

// JSON renderings of every result type. Unfittable cells are null.

#pragma once

#include <span>
#include <string>

#include "json.hpp"
#include "zgptda/augment.hpp"
#include "zgptda/compare.hpp"
#include "zgptda/laws.hpp"
#include "zgptda/mfdfa.hpp"
#include "zgptda/zscore.hpp"

namespace zgptda::report {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json metrics_json(const fitkit::FitMetrics& m);
json law_report_json(const laws::LawReport& r, bool with_series = false);
json spectrum_json(const mfdfa::MultifractalSpectrum& sp);
json fluctuation_json(const mfdfa::Fluctuation& fl);
json evaluation_json(const compare::Evaluation& ev, bool with_series = false);

/// Law x metric grid for both corpora plus exponents side by side.
json comparison_json(const compare::ComparisonReport& cr,
                     const std::string& name_a, const std::string& name_b);

/// Membership breakpoints, weights, inference sets and rules.
json fuzzy_config_json();

json scored_instance_json(const augment::ScoredInstance& si);
json generation_config_json(const augment::GenerationConfig& cfg);
json runs_json(std::span<const augment::AugmentationRun> runs);

}  // namespace zgptda::report
