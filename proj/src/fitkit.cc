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

#include "zgptda/fitkit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "zgptda/errors.hpp"

namespace zgptda::fitkit {
namespace {

constexpr std::array<std::string_view, 8> kLawNames = {
    "zipf", "heaps", "taylor", "hilberg",
    "ebeling", "menzerath", "benford", "mandelbrot",
};

std::vector<double> to_probabilities(std::span<const double> v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  const double n = static_cast<double>(v.size());
  std::vector<double> p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double base = total > 0.0 ? v[i] / total : 1.0 / n;
    p[i] = (base + kSmoothingEpsilon) / (1.0 + n * kSmoothingEpsilon);
  }
  return p;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    d += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(d, 0.0);
}

}  // namespace

std::string_view law_name(Law law) {
  return kLawNames[static_cast<std::size_t>(law)];
}

std::optional<Law> law_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kLawNames.size(); ++i) {
    if (kLawNames[i] == name) return static_cast<Law>(i);
  }
  return std::nullopt;
}

void EmpiricalSeries::validate() const {
  if (x.size() != y.size()) {
    throw std::invalid_argument("series x and y differ in length");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !std::isfinite(x[i])) {
      throw std::invalid_argument("series x must be finite and positive");
    }
    if (!(y[i] >= 0.0) || !std::isfinite(y[i])) {
      throw std::invalid_argument("series y must be finite and non-negative");
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw std::invalid_argument("series x must be strictly increasing");
    }
  }
}

ConformityVerdict verdict(const FitMetrics& m) {
  return {
      .r2 = m.r2 > kR2Threshold,
      .kl = m.kl < kKlThreshold,
      .js = m.js < kJsThreshold,
      .mape = m.mape < kMapeThreshold,
  };
}

FitMetrics fit_metrics(std::span<const double> observed,
                       std::span<const double> fitted) {
  if (observed.size() != fitted.size()) {
    throw std::invalid_argument("fit_metrics: length mismatch");
  }
  if (observed.size() < 2) {
    throw std::invalid_argument("fit_metrics: need at least two points");
  }
  const auto negative = [](double v) { return !(v >= 0.0); };
  if (std::any_of(observed.begin(), observed.end(), negative) ||
      std::any_of(fitted.begin(), fitted.end(), negative)) {
    throw std::invalid_argument("fit_metrics: values must be non-negative");
  }
  if (std::all_of(observed.begin(), observed.end(),
                  [](double v) { return v == 0.0; })) {
    throw std::invalid_argument("fit_metrics: observed values are all zero");
  }

  const std::size_t n = observed.size();
  FitMetrics m;

  const double mean =
      std::accumulate(observed.begin(), observed.end(), 0.0) / double(n);
  double ss_res = 0.0;
  double ss_tot = 0.0;
  double ss_obs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ss_res += (observed[i] - fitted[i]) * (observed[i] - fitted[i]);
    ss_tot += (observed[i] - mean) * (observed[i] - mean);
    ss_obs += observed[i] * observed[i];
  }
  if (ss_tot > 1e-24 * ss_obs) {
    m.r2 = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  } else {
    // Constant observations: only an exact reproduction explains them.
    m.r2 = ss_res <= 1e-24 * ss_obs ? 1.0 : 0.0;
  }

  const auto p = to_probabilities(observed);
  const auto q = to_probabilities(fitted);
  m.kl = kl_divergence(p, q);
  std::vector<double> mid(n);
  for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (p[i] + q[i]);
  const double js_nats = 0.5 * kl_divergence(p, mid) + 0.5 * kl_divergence(q, mid);
  m.js = std::clamp(js_nats / std::log(2.0), 0.0, 1.0);

  double ape = 0.0;
  std::size_t counted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (observed[i] == 0.0) continue;
    ape += std::abs((fitted[i] - observed[i]) / observed[i]);
    ++counted;
  }
  m.mape = ape / double(counted);
  return m;
}

LawFit fit_loglog(const EmpiricalSeries& series) {
  series.validate();
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.y[i] > 0.0) {
      lx.push_back(std::log(series.x[i]));
      ly.push_back(std::log(series.y[i]));
    }
  }
  if (lx.size() < kMinFitPoints) {
    throw NotFittable(std::string(law_name(series.law)) + ": only " +
                      std::to_string(lx.size()) +
                      " positive points, need at least 3");
  }

  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) {
    throw NotFittable(std::string(law_name(series.law)) +
                      ": x has no spread");
  }

  LawFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  if (!std::isfinite(fit.exponent) || !std::isfinite(fit.prefactor) ||
      !(fit.prefactor > 0.0)) {
    throw NotFittable(std::string(law_name(series.law)) +
                      ": regression is not finite");
  }
  fit.fitted_y.reserve(series.size());
  for (double x : series.x) {
    fit.fitted_y.push_back(fit.prefactor * std::pow(x, fit.exponent));
  }
  fit.metrics = fit_metrics(series.y, fit.fitted_y);
  return fit;
}

LawFit fit_benford(std::span<const double> freqs) {
  if (freqs.size() != 9) {
    throw std::invalid_argument("fit_benford: expected 9 digit frequencies");
  }
  const double total = std::accumulate(freqs.begin(), freqs.end(), 0.0);
  if (!(total > 0.0)) {
    throw NotFittable("benford: no first digits observed");
  }

  Eigen::Matrix<double, 9, 3> design;
  Eigen::Matrix<double, 9, 1> response;
  for (int i = 0; i < 9; ++i) {
    const double d = i + 1;
    design(i, 0) = 1.0;
    design(i, 1) = d;
    design(i, 2) = std::log(d);
    response(i) = std::log(std::max(freqs[i], kSmoothingEpsilon));
  }
  const Eigen::Vector3d beta = design.colPivHouseholderQr().solve(response);
  if (!beta.allFinite()) {
    throw NotFittable("benford: regression is not finite");
  }

  LawFit fit;
  // Constant input makes the slope coefficients exactly zero up to rounding;
  // adding 0.0 turns a negative zero into a positive one.
  fit.exponent = -beta(1) + 0.0;
  fit.secondary_exponent = 1.0 + beta(2);
  fit.fitted_y.resize(9);
  double fitted_total = 0.0;
  for (int i = 0; i < 9; ++i) {
    const double d = i + 1;
    fit.fitted_y[i] = std::exp(beta(0) + beta(1) * d + beta(2) * std::log(d));
    fitted_total += fit.fitted_y[i];
  }
  for (double& v : fit.fitted_y) v /= fitted_total;
  fit.prefactor = std::exp(beta(0)) / fitted_total;

  // Metrics see the same smoothed frequencies the regression saw; otherwise
  // empty digits drop out of MAPE and a one-digit sample looks perfect.
  std::vector<double> observed(freqs.begin(), freqs.end());
  double smoothed_total = 0.0;
  for (double& v : observed) {
    v = std::max(v / total, kSmoothingEpsilon);
    smoothed_total += v;
  }
  for (double& v : observed) v /= smoothed_total;
  fit.metrics = fit_metrics(observed, fit.fitted_y);
  return fit;
}

}  // namespace zgptda::fitkit
