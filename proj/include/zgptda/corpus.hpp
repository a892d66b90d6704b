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

// Dataset ingestion and tokenization.
//
// Tokenization rules:
//   * a word is a maximal run of alphabetic code points, case-folded;
//   * a sentence ends at any run of '.', '!' or '?'; sentences without
//     words are dropped;
//   * chars are the alphabetic code points of the text, case preserved.
// Digits and punctuation never form words.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zgptda::corpus {

struct Document {
  std::string id;
  std::string text;
  std::optional<std::string> label;

  friend bool operator==(const Document&, const Document&) = default;
};

struct TokenStream {
  std::vector<std::string> words;
  // Word count of each sentence, in document order. Sums to words.size().
  std::vector<std::size_t> sentences;
  std::u32string chars;

  friend bool operator==(const TokenStream&, const TokenStream&) = default;
};

/// Reads a JSON Lines dataset: one {"id", "text", "label"?} object per line.
/// Throws LoadError naming the offending line.
std::vector<Document> load_jsonl(const std::filesystem::path& path);
std::vector<Document> parse_jsonl(std::istream& in);

TokenStream tokenize(std::string_view text);
inline TokenStream tokenize(const Document& doc) { return tokenize(doc.text); }

/// Concatenates streams; each input keeps its own sentence boundaries.
TokenStream concat(std::span<const TokenStream> streams);

/// The raw text of every sentence that contains at least one word, in the
/// same segmentation tokenize() uses. Leading/trailing whitespace trimmed.
std::vector<std::string> split_sentences(std::string_view text);

/// Leading decimal digit of each value. Throws std::invalid_argument on
/// values < 1.
std::vector<int> first_digits(std::span<const std::int64_t> values);

/// Number of code points in a UTF-8 string.
std::size_t utf8_length(std::string_view s);

}  // namespace zgptda::corpus
