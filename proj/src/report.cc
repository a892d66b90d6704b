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

#include "zgptda/report.hpp"

namespace zgptda::report {
namespace {

std::string_view level_name(zscore::Level l) {
  switch (l) {
    case zscore::kLow:
      return "low";
    case zscore::kMedium:
      return "medium";
    case zscore::kHigh:
      return "high";
  }
  return "?";
}

std::string_view edge_name(zscore::Edge e) {
  switch (e) {
    case zscore::Edge::kNone:
      return "none";
    case zscore::Edge::kLeftShoulder:
      return "left_shoulder";
    case zscore::Edge::kRightShoulder:
      return "right_shoulder";
    case zscore::Edge::kZeroPoint:
      return "zero_point";
  }
  return "?";
}

json sets_json(const zscore::SetTriple& sets) {
  json out = json::object();
  for (const auto& s : sets) {
    out[std::string(s.name)] = {{"points", {s.a, s.b, s.c}},
                                {"edge", edge_name(s.edge)}};
  }
  return out;
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json metrics_json(const fitkit::FitMetrics& m) {
  return {{"r2", m.r2}, {"kl", m.kl}, {"js", m.js}, {"mape", m.mape}};
}

json law_report_json(const laws::LawReport& r, bool with_series) {
  json out = {{"law", fitkit::law_name(r.law)},
              {"fittable", r.fittable()},
              {"points", r.series.size()}};
  if (r.fit) {
    const auto v = fitkit::verdict(r.fit->metrics);
    out["reason"] = nullptr;
    out["exponent"] = r.fit->exponent;
    out["secondary_exponent"] = optional_number(r.fit->secondary_exponent);
    out["prefactor"] = r.fit->prefactor;
    out["metrics"] = metrics_json(r.fit->metrics);
    out["verdict"] = {{"r2", v.r2},     {"kl", v.kl},   {"js", v.js},
                      {"mape", v.mape}, {"all", v.all()}};
  } else {
    out["reason"] = r.reason;
    out["exponent"] = nullptr;
    out["secondary_exponent"] = nullptr;
    out["prefactor"] = nullptr;
    out["metrics"] = nullptr;
    out["verdict"] = nullptr;
  }
  if (with_series) {
    out["series"] = {{"x", r.series.x}, {"y", r.series.y}};
    out["fitted_y"] = r.fit ? json(r.fit->fitted_y) : json(nullptr);
  }
  return out;
}

json spectrum_json(const mfdfa::MultifractalSpectrum& sp) {
  return {{"q", sp.q},
          {"h", sp.h},
          {"tau", sp.tau},
          {"alpha", sp.alpha},
          {"f_alpha", sp.f_alpha},
          {"delta_alpha", sp.delta_alpha},
          {"dropped_q", sp.dropped_q}};
}

json fluctuation_json(const mfdfa::Fluctuation& fl) {
  return {{"scales", fl.scales},
          {"q", fl.q_grid},
          {"order", fl.order},
          {"f", fl.f},
          {"floored_windows", fl.floored_windows},
          {"floored", fl.floored()}};
}

json evaluation_json(const compare::Evaluation& ev, bool with_series) {
  json laws = json::array();
  for (const auto& r : ev.reports) laws.push_back(law_report_json(r, with_series));
  json mandelbrot = {
      {"series_unit", ev.series_unit.empty() ? json(nullptr)
                                             : json(ev.series_unit)},
      {"series_length", ev.mandelbrot.length},
      {"spectrum", ev.mandelbrot.spectrum
                       ? spectrum_json(*ev.mandelbrot.spectrum)
                       : json(nullptr)},
      {"spectrum_reason", ev.mandelbrot.spectrum_reason.empty()
                              ? json(nullptr)
                              : json(ev.mandelbrot.spectrum_reason)},
  };
  if (with_series) {
    mandelbrot["fluctuation"] = ev.mandelbrot.fluctuation
                                    ? fluctuation_json(*ev.mandelbrot.fluctuation)
                                    : json(nullptr);
  }
  return {{"documents", ev.documents},
          {"words", ev.words},
          {"sentences", ev.sentences},
          {"laws", std::move(laws)},
          {"mandelbrot", std::move(mandelbrot)}};
}

json comparison_json(const compare::ComparisonReport& cr,
                     const std::string& name_a, const std::string& name_b) {
  json grid = json::array();
  std::size_t null_cells = 0;
  for (std::size_t i = 0; i < cr.a.reports.size(); ++i) {
    const auto& ra = cr.a.reports[i];
    const auto& rb = cr.b.reports[i];
    const auto cell = [&](const laws::LawReport& r) -> json {
      if (!r.fit) {
        null_cells += 4;
        return {{"metrics", nullptr}, {"exponent", nullptr},
                {"secondary_exponent", nullptr}, {"reason", r.reason}};
      }
      return {{"metrics", metrics_json(r.fit->metrics)},
              {"exponent", r.fit->exponent},
              {"secondary_exponent", optional_number(r.fit->secondary_exponent)},
              {"reason", nullptr}};
    };
    grid.push_back({{"law", fitkit::law_name(ra.law)},
                    {name_a, cell(ra)},
                    {name_b, cell(rb)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"corpora", {name_a, name_b}},
          {"grid", std::move(grid)},
          {"null_cells", null_cells},
          {"details", {{name_a, evaluation_json(cr.a)},
                       {name_b, evaluation_json(cr.b)}}}};
}

json fuzzy_config_json() {
  json metrics = json::object();
  for (auto kind : zscore::kAllMetrics) {
    metrics[std::string(zscore::metric_name(kind))] = {
        {"graded_quantity", kind == zscore::MetricKind::kR2 ? "1 - r2" : "value"},
        {"sets", sets_json(zscore::metric_sets(kind))}};
  }
  json rules = json::array();
  for (const auto& r : zscore::rule_base()) {
    json b = json::array();
    json then = json::array();
    for (auto l : r.b) b.push_back(level_name(l));
    for (auto l : r.then) then.push_back(level_name(l));
    rules.push_back({{"a_t", level_name(r.a)}, {"b_t", b}, {"s_prime", then}});
  }
  return {{"metric_sets", metrics},
          {"weights", {{"r2", zscore::kWeights[0]},
                       {"kl", zscore::kWeights[1]},
                       {"js", zscore::kWeights[2]},
                       {"mape", zscore::kWeights[3]}}},
          {"a_t_sets", sets_json(zscore::a_sets())},
          {"b_t_sets", sets_json(zscore::b_sets())},
          {"b_t_max", zscore::kBMax},
          {"s_prime_sets", sets_json(zscore::s_prime_sets())},
          {"rules", rules},
          {"inference", {{"activation", "min"},
                         {"antecedent_or", "bounded sum"},
                         {"aggregation", "max"}}},
          {"defuzzification", {{"method", "centroid"},
                               {"grid_points", zscore::kCentroidGrid},
                               {"integration", "trapezoid"}}}};
}

json scored_instance_json(const augment::ScoredInstance& si) {
  json laws = json::array();
  std::size_t v = 0;
  for (const auto& r : si.law_reports) {
    json entry = law_report_json(r);
    if (r.fit) {
      const auto& m = r.fit->metrics;
      json grades = json::object();
      const double values[] = {m.r2, m.kl, m.js, m.mape};
      for (std::size_t k = 0; k < 4; ++k) {
        const auto kind = zscore::kAllMetrics[k];
        const auto g = zscore::grade_metric(kind, values[k]);
        grades[std::string(zscore::metric_name(kind))] = {
            {"low", g.low},
            {"medium", g.medium},
            {"high", g.high},
            {"badness", g.badness},
            {"interpolated", g.interpolated}};
      }
      entry["grades"] = std::move(grades);
      entry["a_i"] = si.law_vectors[v].a;
      entry["b_i"] = si.law_vectors[v].b;
      ++v;
    }
    laws.push_back(std::move(entry));
  }
  json out = {{"id", si.instance.id},
              {"text", si.instance.text},
              {"label", si.instance.label ? json(*si.instance.label)
                                          : json(nullptr)},
              {"rank", si.rank},
              {"laws", std::move(laws)},
              {"excluded_laws", si.excluded_laws},
              {"no_signal", !si.z.has_value()},
              {"suitability", si.suitability.s},
              {"s_prime_centroid", si.suitability.s_prime_centroid},
              {"s_prime_activation", si.suitability.activation}};
  if (si.z) {
    out["z"] = {{"a_t", si.z->a_t},
                {"b_t", si.z->b_t},
                {"laws_used", si.z->laws_used}};
  } else {
    out["z"] = nullptr;
  }
  return out;
}

json generation_config_json(const augment::GenerationConfig& cfg) {
  return {{"n_instances", cfg.n_instances},
          {"prompt_template", cfg.prompt_template},
          {"top_fraction", cfg.top_fraction},
          {"model", cfg.model},
          {"temperature", cfg.temperature},
          {"seed", cfg.seed},
          {"max_in_flight", cfg.max_in_flight},
          {"retry", {{"max_attempts", cfg.retry.max_attempts},
                     {"initial_backoff_ms", cfg.retry.initial_backoff.count()},
                     {"multiplier", cfg.retry.multiplier},
                     {"max_backoff_ms", cfg.retry.max_backoff.count()}}}};
}

json runs_json(std::span<const augment::AugmentationRun> runs) {
  json out = json::array();
  for (const auto& run : runs) {
    json instances = json::array();
    for (std::size_t i = 0; i < run.instances.size(); ++i) {
      json inst = scored_instance_json(run.instances[i]);
      inst["selected"] = i < run.selected_count;
      instances.push_back(std::move(inst));
    }
    out.push_back({{"raw_id", run.raw.id},
                   {"selected_count", run.selected_count},
                   {"warnings", run.warnings},
                   {"instances", std::move(instances)}});
  }
  return out;
}

}  // namespace zgptda::report
