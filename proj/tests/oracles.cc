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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace oracle {
namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> zipf_cdf(std::size_t types, double alpha) {
  std::vector<double> cdf(types);
  double acc = 0.0;
  for (std::size_t r = 0; r < types; ++r) {
    acc += std::pow(static_cast<double>(r + 1), -alpha);
    cdf[r] = acc;
  }
  for (double& c : cdf) c /= acc;
  cdf.back() = 1.0;
  return cdf;
}

std::string token(const std::vector<double>& cdf, double u) {
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  return "w" + std::to_string(it - cdf.begin() + 1);
}

void shuffle(std::vector<std::string>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng() % i]);
  }
}

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double tri(double x, double a, double b, double c) {
  if (x <= a || x >= c) return 0.0;
  return x <= b ? (x - a) / (b - a) : (c - x) / (c - b);
}

}  // namespace

std::filesystem::path data_dir() { return ZGPTDA_TEST_DATA_DIR; }

std::vector<std::string> zipf_tokens_systematic(std::size_t types,
                                                std::size_t n, double alpha,
                                                std::uint64_t seed) {
  const auto cdf = zipf_cdf(types, alpha);
  std::mt19937_64 rng(seed);
  const double u = unit_uniform(rng);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(token(cdf, (static_cast<double>(k) + u) / double(n)));
  }
  shuffle(out, rng);
  return out;
}

std::vector<std::string> zipf_tokens_iid(std::size_t types, std::size_t n,
                                         double alpha, std::uint64_t seed) {
  const auto cdf = zipf_cdf(types, alpha);
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(token(cdf, unit_uniform(rng)));
  return out;
}

std::vector<double> white_noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  out.reserve(n + 1);
  while (out.size() < n) {
    const double u1 = 1.0 - unit_uniform(rng);  // (0, 1]
    const double u2 = unit_uniform(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    out.push_back(r * std::cos(2.0 * std::numbers::pi * u2));
    out.push_back(r * std::sin(2.0 * std::numbers::pi * u2));
  }
  out.resize(n);
  return out;
}

std::vector<double> binomial_cascade(double p, int levels) {
  std::vector<double> x = {1.0};
  for (int l = 0; l < levels; ++l) {
    std::vector<double> next;
    next.reserve(2 * x.size());
    for (double v : x) {
      next.push_back(v * p);
      next.push_back(v * (1.0 - p));
    }
    x = std::move(next);
  }
  return x;
}

double cascade_h(double q, double p) {
  return 1.0 / q -
         std::log(std::pow(p, q) + std::pow(1.0 - p, q)) / (q * std::log(2.0));
}

std::array<double, 3> benford_ols(const std::array<double, 9>& f) {
  // X^T X and X^T y accumulated by hand.
  std::array<std::array<double, 3>, 3> xtx{};
  std::array<double, 3> xty{};
  for (int d = 1; d <= 9; ++d) {
    const double row[3] = {1.0, double(d), std::log(double(d))};
    const double y = std::log(f[d - 1]);
    for (int i = 0; i < 3; ++i) {
      xty[i] += row[i] * y;
      for (int j = 0; j < 3; ++j) xtx[i][j] += row[i] * row[j];
    }
  }
  const double det = det3(xtx);
  std::array<double, 3> beta{};
  for (int k = 0; k < 3; ++k) {
    auto m = xtx;
    for (int i = 0; i < 3; ++i) m[i][k] = xty[i];
    beta[k] = det3(m) / det;
  }
  return beta;
}

double r_squared(const std::vector<double>& obs, const std::vector<double>& fit) {
  double mean = 0.0;
  for (double v : obs) mean += v;
  mean /= double(obs.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    ss_res += (obs[i] - fit[i]) * (obs[i] - fit[i]);
    ss_tot += (obs[i] - mean) * (obs[i] - mean);
  }
  return 1.0 - ss_res / ss_tot;
}

double reference_suitability(double a_t, double b_t) {
  const double a = std::clamp(a_t, 0.0, 1.0);
  const double b = std::clamp(b_t, 0.0, 0.5);

  const double a_low = a <= 0.0 ? 1.0 : (a < 0.3 ? (0.3 - a) / 0.3 : 0.0);
  const double a_med = tri(a, 0.2, 0.5, 0.8);
  const double a_high = a >= 1.0 ? 1.0 : (a > 0.7 ? (a - 0.7) / 0.3 : 0.0);

  const double b_low = b <= 0.0 ? 1.0 : (b < 0.1 ? (0.1 - b) / 0.1 : 0.0);
  const double b_med =
      b <= 0.0 ? 0.0 : (b <= 0.1 ? b / 0.1 : (b < 0.25 ? (0.25 - b) / 0.15 : 0.0));
  const double b_high =
      b <= 0.1 ? 0.0 : (b < 0.25 ? (b - 0.1) / 0.15 : 1.0);

  // Antecedent OR is the bounded sum min(1, x + y).
  auto either = [](double x, double y) { return std::min(1.0, x + y); };
  const double any_b = std::min(1.0, b_low + b_med + b_high);
  const double r_high = std::min(a_high, any_b);
  const double r_med = std::min(a_med, any_b);
  const double r_split = std::min(a_low, b_high);
  const double r_low = std::min(a_low, either(b_low, b_med));
  const double act[3] = {std::max(r_split, r_low), std::max(r_split, r_med),
                         r_high};

  double num = 0.0;
  double den = 0.0;
  double px = 0.0;
  double pf = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    const double s_low = x < 0.35 ? (0.35 - x) / 0.35 : 0.0;
    const double s_med = tri(x, 0.25, 0.5, 0.75);
    const double s_high = x > 0.65 ? std::min(1.0, (x - 0.65) / 0.35) : 0.0;
    const double f = std::max({std::min(act[0], s_low), std::min(act[1], s_med),
                               std::min(act[2], s_high)});
    if (i > 0) {
      const double h = x - px;
      den += 0.5 * (pf + f) * h;
      num += 0.5 * (px * pf + x * f) * h;
    }
    px = x;
    pf = f;
  }
  return 1.0 - num / den;
}

}  // namespace oracle
