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

#include <cstddef>
#include <string>
#include <string_view>

namespace zgptda::unicode {

inline constexpr char32_t kReplacement = 0xFFFD;

/// Decodes one code point starting at `pos` and advances `pos`. Malformed
/// sequences yield U+FFFD and consume a single byte.
char32_t next_code_point(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

/// Alphabetic per a fixed table covering the major scripts. The table is
/// compiled in so results never depend on the host locale or ICU version.
bool is_alphabetic(char32_t cp);

/// Simple (one-to-one) case folding for Latin, Greek, Cyrillic, Armenian,
/// Georgian and fullwidth Latin. Other code points map to themselves.
char32_t fold_case(char32_t cp);

}  // namespace zgptda::unicode
