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

#include "zgptda/embedding.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include "json.hpp"
#include "zgptda/errors.hpp"

namespace zgptda::embedding {
namespace {

// FNV-1a, 64-bit. Fixed so vectors are identical on every platform.
std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::vector<double> HashEmbedder::embed(const Unit& unit) const {
  std::vector<double> v(kDimension, 0.0);
  const std::string_view text = unit.text;
  if (text.empty()) return v;
  if (text.size() < 3) {
    v[fnv1a(text) % kDimension] = 1.0;
    return v;
  }
  for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
    v[fnv1a(text.substr(i, 3)) % kDimension] += 1.0;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

FileEmbeddings FileEmbeddings::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open embedding file " + path.string());

  FileEmbeddings out;
  out.source_ = path.filename().string();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    const auto fail = [&](const std::string& why) {
      return LoadError(path.string() + ": line " + std::to_string(line_no) +
                           ": " + why,
                       line_no);
    };
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw fail("malformed JSON");
    }
    if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string() ||
        !rec.contains("unit_index") ||
        !rec["unit_index"].is_number_unsigned() || !rec.contains("vector") ||
        !rec["vector"].is_array()) {
      throw fail("expected {\"id\", \"unit_index\", \"vector\"}");
    }
    std::vector<double> vec;
    for (const auto& x : rec["vector"]) {
      if (!x.is_number()) throw fail("vector entries must be numbers");
      vec.push_back(x.get<double>());
      if (!std::isfinite(vec.back())) throw fail("vector entries must be finite");
    }
    if (vec.empty()) throw fail("empty vector");
    if (out.dimension_ == 0) out.dimension_ = vec.size();
    if (vec.size() != out.dimension_) {
      throw fail("vector has dimension " + std::to_string(vec.size()) +
                 ", expected " + std::to_string(out.dimension_));
    }
    auto key = std::make_pair(rec["id"].get<std::string>(),
                              rec["unit_index"].get<std::size_t>());
    if (!out.vectors_.emplace(std::move(key), std::move(vec)).second) {
      throw fail("duplicate (id, unit_index)");
    }
  }
  return out;
}

std::vector<double> FileEmbeddings::embed(const Unit& unit) const {
  const auto it =
      vectors_.find(std::make_pair(std::string(unit.doc_id), unit.index));
  if (it == vectors_.end()) {
    throw ProviderError("no vector for document \"" + std::string(unit.doc_id) +
                            "\" unit " + std::to_string(unit.index),
                        unit.index);
  }
  return it->second;
}

}  // namespace zgptda::embedding
