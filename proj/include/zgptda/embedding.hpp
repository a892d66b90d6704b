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

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zgptda::embedding {

/// One text unit handed to a provider. `index` is the unit's position in
/// the series being built (0-based).
struct Unit {
  std::string_view doc_id;
  std::size_t index = 0;
  std::string_view text;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  /// Deterministic: the same unit always yields the same vector, and every
  /// vector from one provider has the same dimension.
  virtual std::vector<double> embed(const Unit& unit) const = 0;
  virtual std::string id() const = 0;
  virtual bool concurrency_safe() const { return false; }
};

/// Hashed byte-trigram frequencies, 64 buckets, L2-normalized. Texts shorter
/// than three bytes hash as a single gram; the empty text maps to zeros.
class HashEmbedder final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDimension = 64;

  std::vector<double> embed(const Unit& unit) const override;
  std::string id() const override { return "hash-trigram-64"; }
  bool concurrency_safe() const override { return true; }
};

/// Precomputed vectors read from JSON Lines records
/// {"id": string, "unit_index": integer, "vector": [real, ...]}.
/// Lookup is by (doc id, unit index); the text is ignored.
class FileEmbeddings final : public EmbeddingProvider {
 public:
  /// Throws LoadError on malformed records, mixed dimensions or duplicate
  /// keys.
  static FileEmbeddings load(const std::filesystem::path& path);

  std::vector<double> embed(const Unit& unit) const override;
  std::string id() const override { return "file:" + source_; }
  bool concurrency_safe() const override { return true; }

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }

 private:
  std::string source_;
  std::size_t dimension_ = 0;
  std::map<std::pair<std::string, std::size_t>, std::vector<double>> vectors_;
};

}  // namespace zgptda::embedding
