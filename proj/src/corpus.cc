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

#include "zgptda/corpus.hpp"

#include <fstream>
#include <istream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"
#include "unicode.hpp"
#include "zgptda/errors.hpp"

namespace zgptda::corpus {
namespace {

constexpr bool is_sentence_terminator(char32_t cp) {
  return cp == '.' || cp == '!' || cp == '?';
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(first, last - first + 1);
}

// Single pass shared by tokenize() and split_sentences() so the two can never
// disagree on segmentation.
template <typename OnWord, typename OnChar, typename OnSentence>
void scan(std::string_view text, OnWord&& on_word, OnChar&& on_char,
          OnSentence&& on_sentence) {
  std::string word;
  std::size_t words_in_sentence = 0;
  std::size_t sentence_begin = 0;
  std::size_t pos = 0;

  const auto flush_word = [&] {
    if (!word.empty()) {
      on_word(std::move(word));
      word.clear();
      ++words_in_sentence;
    }
  };
  const auto flush_sentence = [&](std::size_t end) {
    flush_word();
    if (words_in_sentence > 0) {
      on_sentence(words_in_sentence, sentence_begin, end);
    }
    words_in_sentence = 0;
  };

  while (pos < text.size()) {
    const char32_t cp = unicode::next_code_point(text, pos);
    if (unicode::is_alphabetic(cp)) {
      on_char(cp);
      unicode::append_utf8(word, unicode::fold_case(cp));
      continue;
    }
    flush_word();
    if (is_sentence_terminator(cp)) {
      flush_sentence(pos);
      sentence_begin = pos;
    }
  }
  flush_sentence(text.size());
}

}  // namespace

std::vector<Document> parse_jsonl(std::istream& in) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw LoadError(where + "malformed JSON (" + e.what() + ")", line_no);
    }
    if (!obj.is_object()) {
      throw LoadError(where + "expected a JSON object", line_no);
    }
    const auto id = obj.find("id");
    if (id == obj.end() || !id->is_string() ||
        id->get_ref<const std::string&>().empty()) {
      throw LoadError(where + "missing or empty string field \"id\"", line_no);
    }
    const auto text = obj.find("text");
    if (text == obj.end() || !text->is_string()) {
      throw LoadError(where + "missing string field \"text\"", line_no);
    }
    Document doc{id->get<std::string>(), text->get<std::string>(), {}};
    if (const auto label = obj.find("label");
        label != obj.end() && !label->is_null()) {
      if (!label->is_string()) {
        throw LoadError(where + "field \"label\" must be a string", line_no);
      }
      doc.label = label->get<std::string>();
    }
    if (!seen.insert(doc.id).second) {
      throw LoadError(where + "duplicate id \"" + doc.id + "\"", line_no);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<Document> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw LoadError("cannot open dataset " + path.string());
  }
  try {
    return parse_jsonl(in);
  } catch (const LoadError& e) {
    throw LoadError(path.string() + ": " + e.what(), e.line());
  }
}

TokenStream tokenize(std::string_view text) {
  TokenStream ts;
  scan(
      text, [&](std::string&& w) { ts.words.push_back(std::move(w)); },
      [&](char32_t cp) { ts.chars.push_back(cp); },
      [&](std::size_t n, std::size_t, std::size_t) {
        ts.sentences.push_back(n);
      });
  return ts;
}

TokenStream concat(std::span<const TokenStream> streams) {
  TokenStream out;
  for (const auto& ts : streams) {
    out.words.insert(out.words.end(), ts.words.begin(), ts.words.end());
    out.sentences.insert(out.sentences.end(), ts.sentences.begin(),
                         ts.sentences.end());
    out.chars += ts.chars;
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  scan(
      text, [](std::string&&) {}, [](char32_t) {},
      [&](std::size_t, std::size_t begin, std::size_t end) {
        out.emplace_back(trim(text.substr(begin, end - begin)));
      });
  return out;
}

std::vector<int> first_digits(std::span<const std::int64_t> values) {
  std::vector<int> digits;
  digits.reserve(values.size());
  for (std::int64_t v : values) {
    if (v < 1) {
      throw std::invalid_argument("first_digits: value " + std::to_string(v) +
                                  " is not a positive integer");
    }
    while (v >= 10) v /= 10;
    digits.push_back(static_cast<int>(v));
  }
  return digits;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size();) {
    unicode::next_code_point(s, pos);
    ++n;
  }
  return n;
}

}  // namespace zgptda::corpus
