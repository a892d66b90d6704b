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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zgptda/augment.hpp"
#include "zgptda/compare.hpp"
#include "zgptda/corpus.hpp"
#include "zgptda/fitkit.hpp"
#include "zgptda/hashing.hpp"
#include "zgptda/laws.hpp"
#include "zgptda/mfdfa.hpp"
#include "zgptda/zscore.hpp"

namespace {

using namespace zgptda;
using Clock = std::chrono::steady_clock;

// Accumulates failed checks for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream os;
      os.precision(10);
      os << what << ": got " << got << ", want " << want << " +/- " << tol;
      failures.push_back(os.str());
    }
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void power_law_recovery(Check& c) {
  const auto t0 = Clock::now();
  corpus::TokenStream ts;
  ts.words = oracle::zipf_tokens_systematic(10000, 100000, 1.0, 20260101);
  ts.sentences = {ts.words.size()};
  const auto fit = fitkit::fit_loglog(laws::zipf_series(ts));
  const double dt = seconds_since(t0);
  c.near(fit.exponent, -1.0, 0.05, "alpha");
  c.expect(fit.metrics.r2 > 0.95, "r2 <= 0.95");
  c.expect(dt < 5.0, "runtime >= 5 s");
  c.detail << "alpha=" << fit.exponent << " r2=" << fit.metrics.r2
           << " t=" << dt << "s";
}

void metric_exactness(Check& c) {
  const std::vector<double> p = {0.5, 0.5};
  const std::vector<double> q = {0.25, 0.75};
  const auto m = fitkit::fit_metrics(p, q);
  const double kl = 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0);
  c.near(m.kl, kl, 1e-6, "kl closed form");
  c.near(m.kl, 0.1438, 5e-5, "kl to four decimals");
  c.near(m.mape, 0.5, 1e-6, "mape");
  const std::vector<double> v = {0.2, 0.3, 0.1, 0.4};
  const auto id = fitkit::fit_metrics(v, v);
  c.near(id.r2, 1.0, 1e-6, "identity r2");
  c.near(id.kl, 0.0, 1e-6, "identity kl");
  c.near(id.js, 0.0, 1e-6, "identity js");
  c.near(id.mape, 0.0, 1e-6, "identity mape");
  c.detail << "kl=" << m.kl << " mape=" << m.mape;
}

void threshold_verdicts(Check& c) {
  using fitkit::FitMetrics;
  const auto v = [](double r2, double kl, double js, double mape) {
    return fitkit::verdict(FitMetrics{r2, kl, js, mape});
  };
  const double up = 1.0, down = 0.0;
  c.expect(!v(0.9, 0, 0, 0).r2, "r2 = 0.9 passes");
  c.expect(v(std::nextafter(0.9, up), 0, 0, 0).r2, "r2 just above 0.9 fails");
  c.expect(!v(0.5, 0.5, 0, 0).kl, "kl = 0.5 passes");
  c.expect(v(0.5, std::nextafter(0.5, down), 0, 0).kl, "kl just below 0.5 fails");
  c.expect(v(0.5, 0.4, 0, 0).kl, "kl = 0.4 fails");
  c.expect(!v(0.5, 0, 0.2, 0).js, "js = 0.2 passes");
  c.expect(v(0.5, 0, std::nextafter(0.2, down), 0).js, "js just below 0.2 fails");
  c.expect(!v(0.5, 0, 0, 0.5).mape, "mape = 0.5 passes");
  c.expect(v(0.5, 0, 0, std::nextafter(0.5, down)).mape, "mape just below 0.5 fails");
  c.expect(v(0.95, 0.1, 0.1, 0.1).all() && !v(0.85, 0.1, 0.1, 0.1).all(),
           "combined verdict");
  c.detail << "10 boundary checks";
}

void benford(Check& c) {
  std::array<double, 9> f{};
  for (int d = 1; d <= 9; ++d) f[d - 1] = std::log10(1.0 + 1.0 / d);
  const auto fit = fitkit::fit_benford(f);
  const auto beta = oracle::benford_ols(f);
  std::vector<double> ref(9);
  double total = 0.0;
  for (int d = 1; d <= 9; ++d) {
    ref[d - 1] = std::exp(beta[0] + beta[1] * d + beta[2] * std::log(double(d)));
    total += ref[d - 1];
  }
  for (double& x : ref) x /= total;
  const double oracle_r2 = oracle::r_squared({f.begin(), f.end()}, ref);
  c.expect(oracle_r2 >= 0.99, "oracle r2 below 0.99");
  c.expect(fit.metrics.r2 >= 0.99, "r2 below 0.99");
  c.near(fit.metrics.r2, oracle_r2, 1e-9, "r2 vs oracle");
  c.near(fit.exponent, -beta[1], 1e-9, "kappa vs oracle");

  std::array<double, 9> u;
  u.fill(1.0 / 9.0);
  const auto flat = fitkit::fit_benford(u);
  c.near(flat.exponent, 0.0, 1e-9, "uniform kappa");
  c.near(flat.secondary_exponent.value_or(NAN), 1.0, 1e-9, "uniform omega");
  c.detail << "r2=" << fit.metrics.r2 << " oracle_r2=" << oracle_r2
           << " uniform=(" << flat.exponent << "," << *flat.secondary_exponent << ")";
}

void mfdfa_oracles(Check& c) {
  // (a) white noise, timed on 10^5 points with default grids.
  const auto noise = oracle::white_noise(100000, 2024);
  const auto t0 = Clock::now();
  const auto a = mfdfa::analyze(noise);
  const double dt = seconds_since(t0);
  c.expect(a.report.fittable(), "white noise not fittable");
  const double h2 = a.report.fit ? a.report.fit->exponent : NAN;
  c.near(h2, 0.5, 0.07, "white-noise h(2)");
  c.expect(dt < 10.0, "runtime >= 10 s");

  // (b) cascade on dyadic scales.
  const auto prof = mfdfa::profile(oracle::binomial_cascade(0.3, 14));
  std::vector<std::size_t> scales;
  for (int k = 4; k <= 12; ++k) scales.push_back(std::size_t{1} << k);
  std::vector<double> q;
  for (int k = -5; k <= 5; ++k) {
    if (k != 0) q.push_back(k);
  }
  const auto sp = mfdfa::spectrum(mfdfa::fluctuation(prof, scales, q, 1));
  c.expect(sp.q.size() == q.size(), "cascade dropped q values");
  double worst = 0.0;
  for (std::size_t i = 0; i < sp.q.size(); ++i) {
    worst = std::max(worst, std::abs(sp.h[i] - oracle::cascade_h(sp.q[i], 0.3)));
  }
  c.expect(worst <= 0.05, "cascade h(q) off by " + std::to_string(worst));

  // (c) tau identity, exactly.
  bool exact = true;
  for (const auto* s : {&sp, &*a.spectrum}) {
    for (std::size_t i = 0; i < s->q.size(); ++i) {
      exact &= s->tau[i] == s->q[i] * s->h[i] - mfdfa::kFractalDimension;
    }
  }
  c.expect(a.spectrum.has_value() && exact, "tau identity");

  // (d) reversal.
  auto reversed = noise;
  std::reverse(reversed.begin(), reversed.end());
  const auto grid = mfdfa::default_q_grid();
  const auto fwd_prof = mfdfa::profile(noise);
  const auto sc = mfdfa::default_scales(fwd_prof.size());
  const auto fwd = mfdfa::fluctuation(fwd_prof, sc, grid);
  const auto bwd = mfdfa::fluctuation(mfdfa::profile(reversed), sc, grid);
  double rel = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < sc.size(); ++j) {
      rel = std::max(rel, std::abs(fwd.f[i][j] - bwd.f[i][j]) /
                              std::max(1.0, std::abs(fwd.f[i][j])));
    }
  }
  c.expect(rel <= 1e-9, "reversal changed F_q(s)");
  c.detail << "h2=" << h2 << " cascade_max_err=" << worst
           << " reversal_rel=" << rel << " t=" << dt << "s";
}

void fuzzy_suite(Check& c) {
  using namespace zscore;
  c.expect(trimf(0.15, 0.1, 0.15, 0.2) == 1.0, "trimf apex");
  c.expect(trimf(0.1, 0.1, 0.15, 0.2) == 0.0 && trimf(0.2, 0.1, 0.15, 0.2) == 0.0,
           "trimf feet");
  c.expect(trimf(0.125, 0.1, 0.15, 0.2) == 0.5, "trimf slope");
  c.expect(metric_sets(MetricKind::kR2)[1].membership(0.15) == 1.0,
           "1-R2 medium apex");
  const auto g = grade_metric(MetricKind::kR2, 0.85);
  c.near(g.medium, 1.0, 1e-12, "R2 = 0.85 medium");
  c.near(g.low + g.high, 0.0, 1e-12, "R2 = 0.85 others");
  c.expect(grade_metric(MetricKind::kJs, 0.15).medium == 1.0, "JS = 0.15 medium");
  c.expect(grade_metric(MetricKind::kKl, 0.35).medium == 1.0, "KL = 0.35 medium");
  c.expect(grade_metric(MetricKind::kKl, 2.0).high == 1.0, "KL = 2 high");
  c.expect(grade_metric(MetricKind::kKl, 0.0).low == 1.0, "KL = 0 low");
  std::size_t violations = 0;
  for (int j = 0; j <= 100; ++j) {
    double prev = 2.0;
    for (int i = 0; i <= 100; ++i) {
      const double s = infer_suitability({i / 100.0, j / 100.0 * kBMax, 1}).s;
      if (s > prev) ++violations;
      prev = s;
    }
  }
  c.expect(violations == 0, std::to_string(violations) + " monotonicity violations");
  c.detail << "grid violations=" << violations;
}

void z_anchors(Check& c) {
  using zscore::infer_suitability;
  struct Anchor {
    double a, b, s;
  };
  // Pinned from the reference scorer before the library existed.
  const Anchor anchors[] = {
      {0, 0, 0.8833342857142857},      {1, 0, 0.11666571428571426},
      {1, 0.5, 0.11666571428571426},   {0.5, 0.1, 0.5},
      {0.25, 0.3, 0.6353189460807172}, {0.75, 0.2, 0.36468105391928285},
      {0, 0.5, 0.6569449386149695},
  };
  for (const auto& x : anchors) {
    const double s = infer_suitability({x.a, x.b, 1}).s;
    c.near(s, x.s, 1e-9, "pinned anchor");
    c.near(s, oracle::reference_suitability(x.a, x.b), 1e-12, "reference anchor");
  }
  const double s00 = infer_suitability({0, 0, 1}).s;
  c.expect(s00 >= 0.85, "s(0,0) < 0.85");
  double worst = 0.0;
  for (int j = 0; j <= 100; ++j) {
    worst = std::max(worst, infer_suitability({1.0, j / 200.0, 1}).s);
  }
  c.expect(worst <= 0.15, "s(1,.) > 0.15");
  c.detail << "s(0,0)=" << s00 << " max s(1,.)=" << worst;
}

void pipeline_determinism(Check& c) {
  std::vector<corpus::Document> raws;
  for (const auto& d : corpus::load_jsonl(oracle::data_dir() / "alice.jsonl")) {
    if (corpus::split_sentences(d.text).size() < 3) continue;
    raws.push_back(d);
    raws.back().label = raws.size() % 2 ? "pos" : "neg";
    if (raws.size() == 50) break;
  }
  c.expect(raws.size() == 50, "fixture has fewer than 50 usable raws");
  augment::GenerationConfig cfg;
  cfg.n_instances = 10;
  cfg.top_fraction = 0.5;
  cfg.seed = 7;
  std::string bodies[2];
  const auto t0 = Clock::now();
  for (auto& body : bodies) {
    transport::MockTransport mock(cfg.seed);
    body = augment::render_dataset(raws, augment::augment_all(raws, cfg, mock));
  }
  const double dt = seconds_since(t0);
  const auto records = std::count(bodies[0].begin(), bodies[0].end(), '\n');
  c.expect(records == 300, "record count " + std::to_string(records));
  c.expect(bodies[0] == bodies[1], "outputs differ between runs");
  c.detail << "records=" << records << " sha256=" << hashing::sha256_hex(bodies[0]).substr(0, 16)
           << " t=" << dt << "s";
}

void dominance(Check& c) {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t violations = 0;
  double min_gap = 1.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<zscore::LawVector> good, bad;
    const int laws = 1 + int(rng() % 8);
    for (int l = 0; l < laws; ++l) {
      const fitkit::FitMetrics w{u(rng), 1.5 * u(rng), u(rng), 1.5 * u(rng)};
      // Strictly better on every metric.
      const double k = 0.05 + 0.9 * u(rng);
      const fitkit::FitMetrics b{w.r2 + (1.0 - w.r2) * (1.0 - k), w.kl * k, w.js * k,
                                 w.mape * k};
      bad.push_back(zscore::law_vector(w));
      good.push_back(zscore::law_vector(b));
    }
    const double sg = zscore::infer_suitability(zscore::aggregate(good)).s;
    const double sb = zscore::infer_suitability(zscore::aggregate(bad)).s;
    if (sg < sb) ++violations;
    min_gap = std::min(min_gap, sg - sb);
  }
  c.expect(violations == 0, std::to_string(violations) + " violations");
  c.detail << "violations=" << violations << " min(s_good - s_bad)=" << min_gap;
}

void comparison_shape(Check& c) {
  const auto a = corpus::load_jsonl(oracle::data_dir() / "alice.jsonl");
  const auto b = corpus::load_jsonl(oracle::data_dir() / "botchan.jsonl");
  const auto cr = compare::compare_corpora(a, b);
  std::size_t cells = 0;
  std::size_t nulls = 0;
  bool finite = true;
  std::ostringstream exps;
  exps.precision(4);
  for (const auto* ev : {&cr.a, &cr.b}) {
    c.expect(ev->reports.size() == 8, "expected 8 laws");
    for (const auto& r : ev->reports) {
      cells += 4;
      if (!r.fit) {
        nulls += 4;
        continue;
      }
      const auto& m = r.fit->metrics;
      for (double v : {m.r2, m.kl, m.js, m.mape, r.fit->exponent}) {
        finite &= std::isfinite(v);
      }
      if (r.fit->secondary_exponent) finite &= std::isfinite(*r.fit->secondary_exponent);
    }
  }
  c.expect(cells == 64, "grid has " + std::to_string(cells) + " cells");
  c.expect(nulls == 0, std::to_string(nulls) + " null cells");
  c.expect(finite, "non-finite value in grid");
  c.detail << "cells=" << cells << " nulls=" << nulls;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&)> run;
  };
  const Criterion criteria[] = {
      {"power-law recovery", power_law_recovery},
      {"metric exactness", metric_exactness},
      {"threshold verdicts", threshold_verdicts},
      {"benford", benford},
      {"mfdfa oracles", mfdfa_oracles},
      {"fuzzy unit suite", fuzzy_suite},
      {"z-number anchors", z_anchors},
      {"pipeline determinism", pipeline_determinism},
      {"dominance", dominance},
      {"corpus comparison shape", comparison_shape},
  };
  int failed = 0;
  int index = 0;
  for (const auto& crit : criteria) {
    ++index;
    Check c;
    c.detail.precision(6);
    try {
      crit.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    failed += !ok;
    std::printf("%s %2d %-24s %s\n", ok ? "PASS" : "FAIL", index, crit.name,
                c.detail.str().c_str());
    for (const auto& f : c.failures) std::printf("       - %s\n", f.c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
