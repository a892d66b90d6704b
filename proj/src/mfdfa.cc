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

#include "zgptda/mfdfa.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "zgptda/errors.hpp"

namespace zgptda::mfdfa {
namespace {

double component_mean(const std::vector<double>& v, std::size_t unit) {
  if (v.empty()) throw ProviderError("empty embedding", unit);
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  if (!std::isfinite(mean)) throw ProviderError("non-finite embedding", unit);
  return mean;
}

// Residual variance of every window of one scale, start windows first.
std::vector<double> window_variances(std::span<const double> prof,
                                     std::size_t s, int order,
                                     std::size_t* floored) {
  const std::size_t n = prof.size();
  const std::size_t windows = n / s;
  const auto cols = static_cast<Eigen::Index>(order + 1);
  const auto rows = static_cast<Eigen::Index>(s);

  // Centered abscissa keeps the design well conditioned and makes the fit
  // symmetric under reversal of the window.
  Eigen::MatrixXd design(rows, cols);
  const double half = 0.5 * static_cast<double>(s - 1);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double x = (static_cast<double>(i) - half) / half;
    double p = 1.0;
    for (Eigen::Index k = 0; k < cols; ++k) {
      design(i, k) = p;
      p *= x;
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(design);
  const Eigen::MatrixXd q =
      qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);

  std::vector<double> out;
  out.reserve(2 * windows);
  Eigen::VectorXd residual(rows);
  const auto eval = [&](std::size_t start) {
    const Eigen::Map<const Eigen::VectorXd> y(prof.data() + start, rows);
    residual = y - q * (q.transpose() * y);
    const double f2 = residual.squaredNorm() / static_cast<double>(s);
    const double scale = 64.0 * std::numeric_limits<double>::epsilon() *
                         y.cwiseAbs().maxCoeff();
    if (!(f2 >= std::max(kVarianceFloor, scale * scale))) {
      ++*floored;
      out.push_back(kVarianceFloor);
    } else {
      out.push_back(f2);
    }
  };
  for (std::size_t v = 0; v < windows; ++v) eval(v * s);
  for (std::size_t v = 0; v < windows; ++v) eval(n - (v + 1) * s);
  return out;
}

double aggregate(std::span<const double> log_f2, double q) {
  const double count = static_cast<double>(log_f2.size());
  if (q == 0.0) {
    const double mean =
        std::accumulate(log_f2.begin(), log_f2.end(), 0.0) / count;
    return std::exp(0.5 * mean);
  }
  // (mean f2^(q/2))^(1/q) in log space.
  double peak = -std::numeric_limits<double>::infinity();
  for (double l : log_f2) peak = std::max(peak, 0.5 * q * l);
  double acc = 0.0;
  for (double l : log_f2) acc += std::exp(0.5 * q * l - peak);
  return std::exp((peak + std::log(acc / count)) / q);
}

double loglog_slope(std::span<const std::size_t> scales,
                    std::span<const double> f) {
  const double n = static_cast<double>(scales.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t j = 0; j < scales.size(); ++j) {
    if (!(f[j] > 0.0) || !std::isfinite(f[j])) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    mx += std::log(static_cast<double>(scales[j]));
    my += std::log(f[j]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t j = 0; j < scales.size(); ++j) {
    const double dx = std::log(static_cast<double>(scales[j])) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(f[j]) - my);
  }
  return sxy / sxx;
}

}  // namespace

ScalarSeries build_series(std::span<const corpus::Document> docs,
                          const embedding::EmbeddingProvider& provider,
                          UnitPolicy policy) {
  struct PendingUnit {
    const corpus::Document* doc;
    std::size_t index;
    std::string text;
  };
  std::vector<PendingUnit> sentences;
  for (const auto& doc : docs) {
    auto texts = corpus::split_sentences(doc.text);
    for (std::size_t i = 0; i < texts.size(); ++i) {
      sentences.push_back({&doc, i, std::move(texts[i])});
    }
  }

  bool use_words = policy == UnitPolicy::kWord;
  if (policy == UnitPolicy::kSentenceWithWordFallback &&
      sentences.size() < kMinSeriesLength) {
    use_words = true;
  }
  std::vector<PendingUnit> units;
  if (use_words) {
    for (const auto& doc : docs) {
      auto words = corpus::tokenize(doc.text).words;
      for (std::size_t i = 0; i < words.size(); ++i) {
        units.push_back({&doc, i, std::move(words[i])});
      }
    }
  } else {
    units = std::move(sentences);
  }
  if (units.empty()) {
    throw NotFittable("mandelbrot: text has no " +
                      std::string(use_words ? "words" : "sentences"));
  }

  ScalarSeries series{.provider = provider.id(),
                      .unit = use_words ? "word" : "sentence"};
  series.values.reserve(units.size());
  std::size_t dimension = 0;
  for (const auto& u : units) {
    std::vector<double> v;
    try {
      v = provider.embed({u.doc->id, u.index, u.text});
    } catch (const ProviderError&) {
      throw;
    } catch (const std::exception& e) {
      throw ProviderError("embedding unit " + std::to_string(u.index) +
                              " of \"" + u.doc->id + "\" failed: " + e.what(),
                          u.index);
    }
    if (dimension == 0) dimension = v.size();
    if (v.size() != dimension) {
      throw ProviderError("provider returned dimension " +
                              std::to_string(v.size()) + ", expected " +
                              std::to_string(dimension),
                          u.index);
    }
    series.values.push_back(component_mean(v, u.index));
  }
  return series;
}

ScalarSeries build_series(const corpus::Document& doc,
                          const embedding::EmbeddingProvider& provider,
                          UnitPolicy policy) {
  return build_series(std::span(&doc, 1), provider, policy);
}

std::vector<double> profile(std::span<const double> values) {
  if (values.size() < 2) {
    throw std::invalid_argument("profile: need at least two values");
  }
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                      static_cast<double>(values.size());
  // Anchored at zero so that a reversed series gives the mirrored profile
  // up to sign and a constant, both of which detrending removes.
  std::vector<double> out(values.size() + 1, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += values[i] - mean;
    out[i + 1] = acc;
  }
  return out;
}

std::vector<std::size_t> default_scales(std::size_t n) {
  const std::size_t hi = n / 4;
  if (hi < kMinScale) {
    throw NotFittable("mandelbrot: series of length " + std::to_string(n) +
                      " is too short for scale 16");
  }
  constexpr int kCount = 12;
  const double lo_log = std::log(static_cast<double>(kMinScale));
  const double hi_log = std::log(static_cast<double>(hi));
  std::vector<std::size_t> scales;
  for (int i = 0; i < kCount; ++i) {
    const double t = lo_log + (hi_log - lo_log) * i / (kCount - 1);
    auto s = static_cast<std::size_t>(std::llround(std::exp(t)));
    s = std::clamp(s, kMinScale, hi);
    if (scales.empty() || scales.back() != s) scales.push_back(s);
  }
  return scales;
}

std::vector<double> default_q_grid() {
  std::vector<double> q;
  for (int i = -20; i <= 20; ++i) q.push_back(0.5 * i);
  return q;
}

Fluctuation fluctuation(std::span<const double> prof,
                        std::span<const std::size_t> scales,
                        std::span<const double> q_grid, int order) {
  const std::size_t n = prof.size();
  if (order < 1 || order > 3) {
    throw std::invalid_argument("fluctuation: detrend order must be 1..3");
  }
  if (q_grid.empty()) throw std::invalid_argument("fluctuation: empty q grid");
  if (scales.empty()) throw std::invalid_argument("fluctuation: no scales");
  for (std::size_t s : scales) {
    if (s < kMinScale || s > n / 4) {
      throw std::invalid_argument("fluctuation: scale " + std::to_string(s) +
                                  " outside [16, " + std::to_string(n / 4) +
                                  "]");
    }
  }
  for (double q : q_grid) {
    if (!std::isfinite(q)) throw std::invalid_argument("fluctuation: bad q");
  }

  Fluctuation fl;
  fl.scales.assign(scales.begin(), scales.end());
  fl.q_grid.assign(q_grid.begin(), q_grid.end());
  fl.order = order;

  // Scales are independent; each worker writes only its own slots.
  std::vector<std::vector<double>> log_f2(scales.size());
  std::vector<std::size_t> floored(scales.size(), 0);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < scales.size();) {
      auto f2 = window_variances(prof, scales[j], order, &floored[j]);
      for (double& v : f2) v = std::log(v);
      log_f2[j] = std::move(f2);
    }
  };
  const std::size_t workers = std::min<std::size_t>(
      scales.size(), std::max(1u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
  }

  fl.f.assign(q_grid.size(), std::vector<double>(scales.size()));
  for (std::size_t i = 0; i < q_grid.size(); ++i) {
    for (std::size_t j = 0; j < scales.size(); ++j) {
      fl.f[i][j] = aggregate(log_f2[j], q_grid[i]);
    }
  }
  fl.floored_windows = std::accumulate(floored.begin(), floored.end(),
                                       std::size_t{0});
  return fl;
}

MultifractalSpectrum spectrum(const Fluctuation& fl) {
  if (fl.scales.size() < 3) {
    throw NotFittable("mandelbrot: need at least three scales, have " +
                      std::to_string(fl.scales.size()));
  }
  MultifractalSpectrum sp;
  for (std::size_t i = 0; i < fl.q_grid.size(); ++i) {
    const double h = loglog_slope(fl.scales, fl.f[i]);
    if (std::isfinite(h)) {
      sp.q.push_back(fl.q_grid[i]);
      sp.h.push_back(h);
    } else {
      sp.dropped_q.push_back(fl.q_grid[i]);
    }
  }
  const std::size_t k = sp.q.size();
  if (k < 3) {
    throw NotFittable("mandelbrot: fewer than three q values with a finite "
                      "slope");
  }
  sp.tau.resize(k);
  sp.alpha.resize(k);
  sp.f_alpha.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == k ? i : i + 1;
    const double dh = (sp.h[hi] - sp.h[lo]) / (sp.q[hi] - sp.q[lo]);
    const double q = sp.q[i];
    sp.tau[i] = q * sp.h[i] - kFractalDimension;
    sp.alpha[i] = sp.h[i] + q * dh;
    sp.f_alpha[i] = q * (sp.alpha[i] - sp.h[i]) + 1.0;
  }
  const auto [amin, amax] =
      std::minmax_element(sp.alpha.begin(), sp.alpha.end());
  sp.delta_alpha = *amax - *amin;
  return sp;
}

fitkit::LawFit mandelbrot_conformity(const Fluctuation& fl, double q_ref) {
  for (std::size_t i = 0; i < fl.q_grid.size(); ++i) {
    if (std::abs(fl.q_grid[i] - q_ref) <= 1e-12) {
      fitkit::EmpiricalSeries series{.law = fitkit::Law::kMandelbrot};
      for (std::size_t s : fl.scales) series.x.push_back(double(s));
      series.y = fl.f[i];
      return fitkit::fit_loglog(series);
    }
  }
  throw std::invalid_argument("mandelbrot_conformity: q_ref " +
                              std::to_string(q_ref) + " is not on the q grid");
}

Analysis analyze(std::span<const double> values, const Options& options) {
  Analysis out;
  out.length = values.size();
  if (values.size() < kMinSeriesLength) {
    out.report.reason = "mandelbrot: series has " +
                        std::to_string(values.size()) +
                        " values, need at least 64";
    return out;
  }
  const auto prof = profile(values);
  const auto q_grid =
      options.q_grid.empty() ? default_q_grid() : options.q_grid;
  if (std::none_of(q_grid.begin(), q_grid.end(), [&](double q) {
        return std::abs(q - options.q_ref) <= 1e-12;
      })) {
    throw std::invalid_argument("analyze: q_ref is not on the q grid");
  }
  const auto scales =
      options.scales.empty() ? default_scales(values.size()) : options.scales;
  out.fluctuation = fluctuation(prof, scales, q_grid, options.order);

  const auto& fl = *out.fluctuation;
  auto& series = out.report.series;
  for (std::size_t i = 0; i < fl.q_grid.size(); ++i) {
    if (std::abs(fl.q_grid[i] - options.q_ref) <= 1e-12) {
      for (std::size_t s : fl.scales) series.x.push_back(double(s));
      series.y = fl.f[i];
    }
  }
  try {
    out.report.fit = mandelbrot_conformity(fl, options.q_ref);
  } catch (const NotFittable& e) {
    out.report.reason = e.what();
  }
  try {
    out.spectrum = spectrum(fl);
  } catch (const NotFittable& e) {
    out.spectrum_reason = e.what();
  }
  return out;
}

}  // namespace zgptda::mfdfa
