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

#include "zgptda/augment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "zgptda/io.hpp"

namespace zgptda::augment {
namespace {

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos;
       pos += to.size()) {
    s.replace(pos, from.size(), to);
  }
}

// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
  };
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
}

}  // namespace

const char* const kDefaultPromptTemplate =
    "You are a famous expert in the field of engineering. Based on your "
    "understanding, restate the text in {n} sentences.\n\n{text}";

void GenerationConfig::validate() const {
  if (n_instances < 1) {
    throw std::invalid_argument("n_instances must be at least 1");
  }
  if (!(top_fraction > 0.0 && top_fraction <= 1.0)) {
    throw std::invalid_argument("top_fraction must be in (0, 1]");
  }
  if (max_in_flight < 1) {
    throw std::invalid_argument("max_in_flight must be at least 1");
  }
  if (retry.max_attempts < 1) {
    throw std::invalid_argument("retry attempts must be at least 1");
  }
  if (prompt_template.find("{text}") == std::string::npos) {
    throw std::invalid_argument("prompt template must contain {text}");
  }
}

std::string render_prompt(const std::string& tmpl, std::string_view text,
                          std::size_t n) {
  std::string out = tmpl;
  replace_all(out, "{n}", std::to_string(n));
  // Substitute {text} last so braces inside the text are left alone.
  const auto pos = out.find("{text}");
  if (pos != std::string::npos) out.replace(pos, 6, text);
  return out;
}

Generation generate_instances(const Document& raw, const GenerationConfig& cfg,
                              transport::Transport& transport,
                              const transport::Sleeper& sleep) {
  cfg.validate();
  const std::size_t n = cfg.n_instances;
  const std::string prompt = render_prompt(cfg.prompt_template, raw.text, n);

  std::vector<std::optional<std::string>> texts(n);
  std::vector<std::string> failures(n);
  std::vector<bool> empty(n, false);
  parallel_for(n, cfg.max_in_flight, [&](std::size_t i) {
    transport::ChatRequest req{.model = cfg.model,
                               .messages = {{"user", prompt}},
                               .temperature = cfg.temperature,
                               .slot = i + 1};
    try {
      for (int attempt = 0; attempt < 2; ++attempt) {
        auto text = transport::complete_with_retry(transport, req, cfg.retry,
                                                   sleep);
        if (!blank(text)) {
          texts[i] = std::move(text);
          return;
        }
      }
      empty[i] = true;
    } catch (const std::exception& e) {
      failures[i] = e.what();
      if (failures[i].empty()) failures[i] = "unknown transport failure";
    }
  });

  Generation gen;
  std::string first_failure;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = raw.id + "#gen" + std::to_string(i + 1);
    if (texts[i]) {
      gen.instances.push_back({id, std::move(*texts[i]), raw.label});
    } else if (empty[i]) {
      gen.warnings.push_back(id + ": empty completion, dropped");
    } else if (first_failure.empty()) {
      first_failure = id + ": " + failures[i];
    }
  }
  if (!first_failure.empty()) {
    throw PartialGeneration("generation failed for " + first_failure,
                            std::move(gen.instances));
  }
  return gen;
}

ScoredInstance score_instance(const Document& instance,
                              const compare::AnalysisParams& params) {
  ScoredInstance out;
  out.instance = instance;
  out.law_reports = compare::evaluate(std::span(&instance, 1), params).reports;
  for (const auto& r : out.law_reports) {
    if (r.fittable()) {
      out.law_vectors.push_back(zscore::law_vector(r.fit->metrics));
    } else {
      out.excluded_laws.emplace_back(fitkit::law_name(r.law));
    }
  }
  if (!out.law_vectors.empty()) {
    out.z = zscore::aggregate(out.law_vectors);
    out.suitability = zscore::infer_suitability(*out.z);
  }
  return out;
}

bool id_less(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  const auto digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && digit(a[ie])) ++ie;
      while (je < b.size() && digit(b[je])) ++je;
      // Compare values without overflow: strip leading zeros, then length,
      // then lexicographically.
      auto da = a.substr(i, ie - i);
      auto db = b.substr(j, je - j);
      da.remove_prefix(std::min(da.find_first_not_of('0'), da.size()));
      db.remove_prefix(std::min(db.find_first_not_of('0'), db.size()));
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      if (ie - i != je - j) return ie - i < je - j;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) {
        return static_cast<unsigned char>(a[i]) <
               static_cast<unsigned char>(b[j]);
      }
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

void rank_instances(std::vector<ScoredInstance>& instances) {
  std::stable_sort(instances.begin(), instances.end(),
                   [](const ScoredInstance& x, const ScoredInstance& y) {
                     if (x.suitability.s != y.suitability.s) {
                       return x.suitability.s > y.suitability.s;
                     }
                     return id_less(x.instance.id, y.instance.id);
                   });
  for (std::size_t i = 0; i < instances.size(); ++i) instances[i].rank = i + 1;
}

std::size_t selection_count(std::size_t n, double fraction) {
  if (n == 0) return 0;
  const double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)),
                                 1, n);
}

std::vector<ScoredInstance> select_augmented(
    std::vector<ScoredInstance> instances, double top_fraction) {
  if (instances.empty()) {
    throw std::invalid_argument("select_augmented: no instances");
  }
  rank_instances(instances);
  instances.resize(selection_count(instances.size(), top_fraction));
  return instances;
}

AugmentationRun augment_one(const Document& raw, const GenerationConfig& cfg,
                            transport::Transport& transport,
                            const compare::AnalysisParams& params,
                            const transport::Sleeper& sleep) {
  auto gen = generate_instances(raw, cfg, transport, sleep);
  AugmentationRun run;
  run.raw = raw;
  run.warnings = std::move(gen.warnings);
  run.instances.resize(gen.instances.size());
  const std::size_t workers =
      params.embedder().concurrency_safe()
          ? std::max(1u, std::thread::hardware_concurrency())
          : 1;
  std::vector<std::exception_ptr> errors(gen.instances.size());
  parallel_for(gen.instances.size(), workers, [&](std::size_t i) {
    try {
      run.instances[i] = score_instance(gen.instances[i], params);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  rank_instances(run.instances);
  run.selected_count =
      run.instances.empty()
          ? 0
          : selection_count(run.instances.size(), cfg.top_fraction);
  return run;
}

std::vector<AugmentationRun> augment_all(std::span<const Document> raws,
                                         const GenerationConfig& cfg,
                                         transport::Transport& transport,
                                         const compare::AnalysisParams& params,
                                         const transport::Sleeper& sleep) {
  std::vector<AugmentationRun> runs;
  runs.reserve(raws.size());
  for (const auto& raw : raws) {
    try {
      runs.push_back(augment_one(raw, cfg, transport, params, sleep));
    } catch (const PartialGeneration& e) {
      throw PartialAugmentation(e.what(), std::move(runs));
    }
  }
  return runs;
}

std::string render_dataset(std::span<const Document> raws,
                           std::span<const AugmentationRun> runs) {
  std::set<std::string, std::less<>> raw_ids;
  std::set<std::string, std::less<>> ids;
  for (const auto& r : raws) {
    raw_ids.insert(r.id);
    if (!ids.insert(r.id).second) {
      throw Error("duplicate output id \"" + r.id + "\"");
    }
  }
  for (const auto& run : runs) {
    if (!raw_ids.contains(run.raw.id)) {
      throw std::invalid_argument("run for \"" + run.raw.id +
                                  "\" has no matching raw example");
    }
    for (const auto& inst : run.selected()) {
      if (!ids.insert(inst.instance.id).second) {
        throw Error("duplicate output id \"" + inst.instance.id + "\"");
      }
    }
  }

  std::string out;
  const auto emit = [&](const Document& doc, std::string_view origin,
                        const std::string& source,
                        std::optional<double> suitability) {
    nlohmann::json rec = {{"id", doc.id},
                          {"text", doc.text},
                          {"origin", origin},
                          {"source_id", source}};
    if (doc.label) rec["label"] = *doc.label;
    if (suitability) rec["suitability"] = *suitability;
    out += rec.dump();
    out += '\n';
  };
  for (const auto& r : raws) emit(r, "raw", r.id, std::nullopt);
  for (const auto& run : runs) {
    for (const auto& inst : run.selected()) {
      emit(inst.instance, "aug", run.raw.id, inst.suitability.s);
    }
  }
  return out;
}

void emit_dataset(std::span<const Document> raws,
                  std::span<const AugmentationRun> runs,
                  const std::filesystem::path& path) {
  io::write_atomic(path, render_dataset(raws, runs));
}

}  // namespace zgptda::augment
