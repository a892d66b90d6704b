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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "zgptda/augment.hpp"
#include "zgptda/compare.hpp"
#include "zgptda/corpus.hpp"
#include "zgptda/errors.hpp"
#include "zgptda/fitkit.hpp"
#include "zgptda/laws.hpp"
#include "zgptda/mfdfa.hpp"
#include "zgptda/report.hpp"
#include "zgptda/transport.hpp"
#include "zgptda/zscore.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace zgptda;

namespace {

// Reports are already built as JSON for the CLI; hand them over as dicts.
py::object to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict metrics_dict(const fitkit::FitMetrics& m) {
  py::dict d;
  d["r2"] = m.r2;
  d["kl"] = m.kl;
  d["js"] = m.js;
  d["mape"] = m.mape;
  return d;
}

py::dict fit_dict(const fitkit::LawFit& f) {
  py::dict d;
  d["exponent"] = f.exponent;
  d["secondary_exponent"] = f.secondary_exponent;
  d["prefactor"] = f.prefactor;
  d["fitted_y"] = f.fitted_y;
  d["metrics"] = metrics_dict(f.metrics);
  return d;
}

corpus::Document to_document(const py::dict& d) {
  corpus::Document doc;
  doc.id = d["id"].cast<std::string>();
  doc.text = d["text"].cast<std::string>();
  if (d.contains("label") && !d["label"].is_none()) {
    doc.label = d["label"].cast<std::string>();
  }
  return doc;
}

std::vector<corpus::Document> to_documents(const py::iterable& items) {
  std::vector<corpus::Document> docs;
  for (const auto& item : items) docs.push_back(to_document(item.cast<py::dict>()));
  return docs;
}

zscore::MetricKind metric_kind(const std::string& name) {
  for (auto k : zscore::kAllMetrics) {
    if (zscore::metric_name(k) == name) return k;
  }
  throw py::value_error("unknown metric: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Scaling-law fits, MFDFA and fuzzy suitability scoring";

  py::register_exception<NotFittable>(m, "NotFittable", PyExc_ValueError);
  py::register_exception<LoadError>(m, "LoadError", PyExc_IOError);

  m.def("tokenize", [](const std::string& text) {
    const auto ts = corpus::tokenize(text);
    py::dict d;
    d["words"] = ts.words;
    d["sentences"] = ts.sentences;
    d["chars"] = ts.chars;
    return d;
  });

  m.def("load_jsonl", [](const std::string& path) {
    py::list out;
    for (const auto& doc : corpus::load_jsonl(path)) {
      py::dict d;
      d["id"] = doc.id;
      d["text"] = doc.text;
      d["label"] = doc.label;
      out.append(d);
    }
    return out;
  });

  m.def("fit_loglog",
        [](std::vector<double> x, std::vector<double> y) {
          fitkit::EmpiricalSeries s;
          s.x = std::move(x);
          s.y = std::move(y);
          return fit_dict(fitkit::fit_loglog(s));
        },
        py::arg("x"), py::arg("y"));
  m.def("fit_benford",
        [](const std::vector<double>& f) { return fit_dict(fitkit::fit_benford(f)); },
        py::arg("freqs"));
  m.def("fit_metrics",
        [](const std::vector<double>& observed, const std::vector<double>& fitted) {
          return metrics_dict(fitkit::fit_metrics(observed, fitted));
        },
        py::arg("observed"), py::arg("fitted"));

  m.def("evaluate_text", [](const std::string& text) {
    py::list out;
    for (const auto& r : laws::evaluate_all(corpus::tokenize(text))) {
      out.append(to_py(report::law_report_json(r)));
    }
    return out;
  });

  m.def("evaluate_corpus", [](const py::iterable& docs) {
    const auto d = to_documents(docs);
    return to_py(report::evaluation_json(compare::evaluate(d)));
  });

  m.def("compare_corpora",
        [](const py::iterable& a, const py::iterable& b, const std::string& name_a,
           const std::string& name_b) {
          const auto da = to_documents(a);
          const auto db = to_documents(b);
          return to_py(report::comparison_json(compare::compare_corpora(da, db),
                                               name_a, name_b));
        },
        py::arg("a"), py::arg("b"), py::arg("name_a") = "a",
        py::arg("name_b") = "b");

  m.def("mfdfa",
        [](const std::vector<double>& values, int order, double q_ref) {
          mfdfa::Options opt;
          opt.order = order;
          opt.q_ref = q_ref;
          const auto a = mfdfa::analyze(values, opt);
          json out = {{"length", a.length},
                      {"law", report::law_report_json(a.report, true)}};
          if (a.fluctuation) out["fluctuation"] = report::fluctuation_json(*a.fluctuation);
          if (a.spectrum) out["spectrum"] = report::spectrum_json(*a.spectrum);
          return to_py(out);
        },
        py::arg("values"), py::arg("order") = 1, py::arg("q_ref") = 2.0);

  m.def("grade_metric",
        [](const std::string& kind, double value) {
          const auto g = zscore::grade_metric(metric_kind(kind), value);
          py::dict d;
          d["low"] = g.low;
          d["medium"] = g.medium;
          d["high"] = g.high;
          d["badness"] = g.badness;
          return d;
        },
        py::arg("kind"), py::arg("value"));

  m.def("suitability",
        [](double a_t, double b_t) {
          return zscore::infer_suitability({a_t, b_t, 1}).s;
        },
        py::arg("a_t"), py::arg("b_t"));

  m.def("fuzzy_config", [] { return to_py(report::fuzzy_config_json()); });

  m.def("augment_mock",
        [](const py::iterable& raws, std::size_t n, double fraction,
           std::uint64_t seed) {
          const auto docs = to_documents(raws);
          augment::GenerationConfig cfg;
          cfg.n_instances = n;
          cfg.top_fraction = fraction;
          transport::MockTransport mock(seed);
          std::vector<augment::AugmentationRun> runs;
          {
            py::gil_scoped_release release;
            runs = augment::augment_all(docs, cfg, mock);
          }
          return augment::render_dataset(docs, runs);
        },
        py::arg("raws"), py::arg("n") = 10, py::arg("fraction") = 0.5,
        py::arg("seed") = 7);
}
