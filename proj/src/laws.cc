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

#include "zgptda/laws.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "zgptda/errors.hpp"

namespace zgptda::laws {
namespace {

using fitkit::Law;

// Dense ids in first-occurrence order.
std::vector<std::uint32_t> word_ids(const TokenStream& ts,
                                    std::size_t* vocabulary = nullptr) {
  std::unordered_map<std::string_view, std::uint32_t> index;
  std::vector<std::uint32_t> ids;
  ids.reserve(ts.words.size());
  for (const auto& w : ts.words) {
    auto [it, inserted] =
        index.try_emplace(w, static_cast<std::uint32_t>(index.size()));
    ids.push_back(it->second);
  }
  if (vocabulary) *vocabulary = index.size();
  return ids;
}

}  // namespace

EmpiricalSeries zipf_series(const TokenStream& ts) {
  std::size_t vocabulary = 0;
  const auto ids = word_ids(ts, &vocabulary);
  // ids are dense in first-occurrence order, so a stable sort on count
  // breaks ties by first occurrence.
  std::vector<std::uint64_t> counts(vocabulary, 0);
  for (auto id : ids) ++counts[id];
  std::vector<std::uint32_t> order(vocabulary);
  for (std::uint32_t i = 0; i < vocabulary; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return counts[a] > counts[b];
  });

  EmpiricalSeries s{.law = Law::kZipf};
  s.x.reserve(vocabulary);
  s.y.reserve(vocabulary);
  for (std::size_t r = 0; r < order.size(); ++r) {
    s.x.push_back(static_cast<double>(r + 1));
    s.y.push_back(static_cast<double>(counts[order[r]]));
  }
  return s;
}

EmpiricalSeries heaps_series(const TokenStream& ts) {
  EmpiricalSeries s{.law = Law::kHeaps};
  const std::size_t n = ts.words.size();
  if (n == 0) return s;
  const std::size_t stride = std::max<std::size_t>(1, (n + 199) / 200);
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i < n; ++i) {
    seen.insert(ts.words[i]);
    if ((i + 1) % stride == 0) {
      s.x.push_back(static_cast<double>(i + 1));
      s.y.push_back(static_cast<double>(seen.size()));
    }
  }
  return s;
}

EmpiricalSeries taylor_series(const TokenStream& ts, std::size_t segment_len) {
  if (segment_len == 0) {
    throw std::invalid_argument("taylor_series: segment_len must be positive");
  }
  EmpiricalSeries s{.law = Law::kTaylor};
  const std::size_t segments = ts.words.size() / segment_len;
  if (segments < 3) return s;

  std::size_t vocabulary = 0;
  const auto ids = word_ids(ts, &vocabulary);
  std::vector<std::int64_t> sum(vocabulary, 0);
  std::vector<std::int64_t> sum_sq(vocabulary, 0);
  std::vector<std::uint32_t> present(vocabulary, 0);
  std::unordered_map<std::uint32_t, std::int64_t> local;
  for (std::size_t seg = 0; seg < segments; ++seg) {
    local.clear();
    for (std::size_t i = seg * segment_len; i < (seg + 1) * segment_len; ++i) {
      ++local[ids[i]];
    }
    for (const auto& [id, c] : local) {
      sum[id] += c;
      sum_sq[id] += c * c;
      ++present[id];
    }
  }

  // Group by total count (equivalently by mean). S^2 * variance is computed
  // in integers so constant-count words are detected exactly.
  const auto S = static_cast<std::int64_t>(segments);
  std::map<std::int64_t, std::pair<double, std::size_t>> by_total;
  for (std::size_t id = 0; id < vocabulary; ++id) {
    if (present[id] < 2) continue;
    const std::int64_t scaled_var = S * sum_sq[id] - sum[id] * sum[id];
    if (scaled_var <= 0) continue;
    const double sigma =
        std::sqrt(static_cast<double>(scaled_var)) / static_cast<double>(S);
    auto& [sigma_total, words] = by_total[sum[id]];
    sigma_total += sigma;
    ++words;
  }
  for (const auto& [total, acc] : by_total) {
    s.x.push_back(static_cast<double>(total) / static_cast<double>(S));
    s.y.push_back(acc.first / static_cast<double>(acc.second));
  }
  return s;
}

EmpiricalSeries hilberg_series(const TokenStream& ts, std::size_t max_block) {
  EmpiricalSeries s{.law = Law::kHilberg};
  const auto ids = word_ids(ts);
  const std::size_t n = ids.size();
  std::unordered_map<std::string, std::uint64_t> grams;
  for (std::size_t mu = 1; mu <= max_block && mu <= n; ++mu) {
    grams.clear();
    const std::size_t total = n - mu + 1;
    std::string key(mu * sizeof(std::uint32_t), '\0');
    for (std::size_t i = 0; i < total; ++i) {
      std::memcpy(key.data(), ids.data() + i, key.size());
      ++grams[key];
    }
    // H = ln T - (1/T) sum c ln c
    double acc = 0.0;
    for (const auto& [gram, c] : grams) {
      acc += static_cast<double>(c) * std::log(static_cast<double>(c));
    }
    const double t = static_cast<double>(total);
    const double entropy = std::max(0.0, std::log(t) - acc / t);
    s.x.push_back(static_cast<double>(mu));
    s.y.push_back(entropy);
  }
  return s;
}

std::vector<std::size_t> ebeling_lengths(std::size_t n_chars) {
  std::vector<std::size_t> lengths;
  for (std::size_t u = 2; u <= n_chars / 8; u *= 2) lengths.push_back(u);
  return lengths;
}

EmpiricalSeries ebeling_series(const TokenStream& ts) {
  const auto lengths = ebeling_lengths(ts.chars.size());
  return ebeling_series(ts, lengths);
}

EmpiricalSeries ebeling_series(const TokenStream& ts,
                               std::span<const std::size_t> lengths) {
  EmpiricalSeries s{.law = Law::kEbeling};
  const std::size_t n = ts.chars.size();

  std::unordered_map<char32_t, std::uint32_t> alphabet;
  std::vector<std::uint32_t> ids;
  ids.reserve(n);
  for (char32_t c : ts.chars) {
    auto [it, inserted] =
        alphabet.try_emplace(c, static_cast<std::uint32_t>(alphabet.size()));
    ids.push_back(it->second);
  }
  const std::size_t a = alphabet.size();
  std::vector<std::int64_t> window(a, 0);
  std::vector<std::int64_t> sum(a);
  std::vector<std::int64_t> sum_sq(a);

  for (std::size_t u : lengths) {
    if (u == 0 || u > n) continue;
    if (!s.x.empty() && !(static_cast<double>(u) > s.x.back())) {
      throw std::invalid_argument(
          "ebeling_series: lengths must be strictly increasing");
    }
    const std::size_t windows = n / u;
    std::fill(sum.begin(), sum.end(), 0);
    std::fill(sum_sq.begin(), sum_sq.end(), 0);
    for (std::size_t w = 0; w < windows; ++w) {
      const std::size_t begin = w * u;
      for (std::size_t i = begin; i < begin + u; ++i) ++window[ids[i]];
      for (std::size_t i = begin; i < begin + u; ++i) {
        const auto id = ids[i];
        if (window[id] == 0) continue;  // already folded in
        sum[id] += window[id];
        sum_sq[id] += window[id] * window[id];
        window[id] = 0;
      }
    }
    const auto W = static_cast<std::int64_t>(windows);
    double total_variance = 0.0;
    for (std::size_t c = 0; c < a; ++c) {
      const std::int64_t scaled = W * sum_sq[c] - sum[c] * sum[c];
      total_variance +=
          static_cast<double>(scaled) / static_cast<double>(W * W);
    }
    s.x.push_back(static_cast<double>(u));
    s.y.push_back(total_variance);
  }
  return s;
}

EmpiricalSeries menzerath_series(const TokenStream& ts) {
  EmpiricalSeries s{.law = Law::kMenzerath};
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> groups;
  std::size_t offset = 0;
  for (std::size_t len : ts.sentences) {
    if (offset + len > ts.words.size()) {
      throw std::invalid_argument(
          "menzerath_series: sentence lengths exceed word count");
    }
    auto& [letters, words] = groups[len];
    for (std::size_t i = offset; i < offset + len; ++i) {
      letters += corpus::utf8_length(ts.words[i]);
    }
    words += len;
    offset += len;
  }
  for (const auto& [len, acc] : groups) {
    if (len == 0) continue;
    s.x.push_back(static_cast<double>(len));
    s.y.push_back(static_cast<double>(acc.first) /
                  static_cast<double>(acc.second));
  }
  return s;
}

EmpiricalSeries benford_series(const TokenStream& ts) {
  EmpiricalSeries s{.law = Law::kBenford};
  std::vector<std::int64_t> lengths;
  for (std::size_t len : ts.sentences) {
    if (len > 0) lengths.push_back(static_cast<std::int64_t>(len));
  }
  std::array<double, 9> counts{};
  for (int d : corpus::first_digits(lengths)) counts[d - 1] += 1.0;
  for (int d = 1; d <= 9; ++d) {
    s.x.push_back(d);
    s.y.push_back(lengths.empty()
                      ? 0.0
                      : counts[d - 1] / static_cast<double>(lengths.size()));
  }
  return s;
}

LawReport fit_report(EmpiricalSeries series) {
  LawReport report{.law = series.law, .series = std::move(series)};
  try {
    if (report.law == Law::kBenford) {
      // fit_benford itself accepts any nonzero mass; a law report needs
      // three occupied digits like every other series needs three points.
      const auto occupied = std::count_if(
          report.series.y.begin(), report.series.y.end(),
          [](double f) { return f > 0.0; });
      if (occupied < 3) {
        throw NotFittable("benford: only " + std::to_string(occupied) +
                          " distinct first digits, need at least 3");
      }
      report.fit = fitkit::fit_benford(report.series.y);
    } else {
      report.fit = fitkit::fit_loglog(report.series);
    }
  } catch (const NotFittable& e) {
    report.reason = e.what();
  }
  return report;
}

std::vector<LawReport> evaluate_all(const TokenStream& ts,
                                    const Params& params) {
  std::vector<LawReport> reports;
  reports.reserve(7);
  reports.push_back(fit_report(zipf_series(ts)));
  reports.push_back(fit_report(heaps_series(ts)));
  reports.push_back(fit_report(taylor_series(ts, params.taylor_segment_len)));
  reports.push_back(fit_report(hilberg_series(ts, params.hilberg_max_block)));
  reports.push_back(fit_report(ebeling_series(ts)));
  reports.push_back(fit_report(menzerath_series(ts)));
  reports.push_back(fit_report(benford_series(ts)));
  return reports;
}

}  // namespace zgptda::laws
