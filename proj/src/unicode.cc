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

#include "unicode.hpp"

#include <algorithm>
#include <iterator>

namespace zgptda::unicode {
namespace {

struct Range {
  char32_t lo;
  char32_t hi;
};

// Sorted, non-overlapping. Text is assumed to be NFC; combining diacritics
// outside the listed scripts are not letters.
constexpr Range kAlphabetic[] = {
    {0x0041, 0x005A}, {0x0061, 0x007A}, {0x00AA, 0x00AA}, {0x00B5, 0x00B5},
    {0x00BA, 0x00BA}, {0x00C0, 0x00D6}, {0x00D8, 0x00F6}, {0x00F8, 0x02C1},
    {0x02C6, 0x02D1}, {0x02E0, 0x02E4}, {0x02EC, 0x02EC}, {0x02EE, 0x02EE},
    {0x0345, 0x0345}, {0x0370, 0x0374}, {0x0376, 0x0377}, {0x037A, 0x037D},
    {0x037F, 0x037F}, {0x0386, 0x0386}, {0x0388, 0x038A}, {0x038C, 0x038C},
    {0x038E, 0x03A1}, {0x03A3, 0x03F5}, {0x03F7, 0x0481}, {0x048A, 0x052F},
    {0x0531, 0x0556}, {0x0560, 0x0588}, {0x05B0, 0x05BD}, {0x05D0, 0x05EA},
    {0x05EF, 0x05F2}, {0x0620, 0x0657}, {0x066E, 0x06D3}, {0x06D5, 0x06D5},
    {0x06FA, 0x06FC}, {0x0900, 0x0963}, {0x0971, 0x097F}, {0x0E01, 0x0E3A},
    {0x0E40, 0x0E4D}, {0x10A0, 0x10C5}, {0x10D0, 0x10FA}, {0x10FC, 0x10FF},
    {0x1100, 0x11FF}, {0x1E00, 0x1F15}, {0x1F18, 0x1F1D}, {0x1F20, 0x1F45},
    {0x1F48, 0x1F4D}, {0x1F50, 0x1F57}, {0x1F59, 0x1F7D}, {0x1F80, 0x1FB4},
    {0x1FB6, 0x1FBC}, {0x1FC2, 0x1FC4}, {0x1FC6, 0x1FCC}, {0x1FD0, 0x1FD3},
    {0x1FD6, 0x1FDB}, {0x1FE0, 0x1FEC}, {0x1FF2, 0x1FF4}, {0x1FF6, 0x1FFC},
    {0x2D00, 0x2D25}, {0x3041, 0x3096}, {0x309D, 0x309F}, {0x30A1, 0x30FA},
    {0x30FC, 0x30FF}, {0x3131, 0x318E}, {0x3400, 0x4DBF}, {0x4E00, 0x9FFF},
    {0xA640, 0xA66E}, {0xAC00, 0xD7A3}, {0xF900, 0xFAFF}, {0xFB00, 0xFB06},
    {0xFF21, 0xFF3A}, {0xFF41, 0xFF5A}, {0x20000, 0x2A6DF}, {0x2A700, 0x2FA1F},
};

constexpr bool in(char32_t cp, char32_t lo, char32_t hi) {
  return cp >= lo && cp <= hi;
}

// Pairs laid out upper/lower alternating; `upper_parity` is the parity of
// the upper-case member.
constexpr char32_t fold_pair(char32_t cp, unsigned upper_parity) {
  return (cp % 2 == upper_parity) ? cp + 1 : cp;
}

}  // namespace

char32_t next_code_point(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(s[i]);
  };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int extra = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    ++pos;
    return kReplacement;
  }
  if (pos + extra >= s.size()) {
    ++pos;
    return kReplacement;
  }
  for (int i = 1; i <= extra; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kReplacement;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || in(cp, 0xD800, 0xDFFF)) {
    ++pos;
    return kReplacement;
  }
  pos += extra + 1;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_alphabetic(char32_t cp) {
  if (cp < 0x80) {
    return in(cp, 'A', 'Z') || in(cp, 'a', 'z');
  }
  auto it = std::upper_bound(
      std::begin(kAlphabetic), std::end(kAlphabetic), cp,
      [](char32_t v, const Range& r) { return v < r.lo; });
  if (it == std::begin(kAlphabetic)) return false;
  --it;
  return cp <= it->hi;
}

char32_t fold_case(char32_t cp) {
  if (cp < 0x80) return in(cp, 'A', 'Z') ? cp + 32 : cp;
  if (in(cp, 0x00C0, 0x00DE) && cp != 0x00D7) return cp + 32;
  if (cp < 0x0100) return cp;

  // Latin Extended-A / B.
  if (in(cp, 0x0100, 0x012F)) return fold_pair(cp, 0);
  if (cp == 0x0130) return 'i';
  if (in(cp, 0x0132, 0x0137)) return fold_pair(cp, 0);
  if (in(cp, 0x0139, 0x0148)) return fold_pair(cp, 1);
  if (in(cp, 0x014A, 0x0177)) return fold_pair(cp, 0);
  if (cp == 0x0178) return 0x00FF;
  if (in(cp, 0x0179, 0x017E)) return fold_pair(cp, 1);
  if (cp == 0x017F) return 's';
  if (in(cp, 0x01CD, 0x01DC)) return fold_pair(cp, 1);
  if (in(cp, 0x01DE, 0x01EF)) return fold_pair(cp, 0);
  if (in(cp, 0x01F8, 0x021F)) return fold_pair(cp, 0);
  if (in(cp, 0x0222, 0x0233)) return fold_pair(cp, 0);

  // Greek.
  if (cp == 0x0386) return 0x03AC;
  if (in(cp, 0x0388, 0x038A)) return cp + 37;
  if (cp == 0x038C) return 0x03CC;
  if (in(cp, 0x038E, 0x038F)) return cp + 63;
  if (in(cp, 0x0391, 0x03A1) || in(cp, 0x03A3, 0x03AB)) return cp + 32;
  if (cp == 0x03C2) return 0x03C3;
  if (in(cp, 0x03D8, 0x03EF)) return fold_pair(cp, 0);

  // Cyrillic.
  if (in(cp, 0x0400, 0x040F)) return cp + 80;
  if (in(cp, 0x0410, 0x042F)) return cp + 32;
  if (in(cp, 0x0460, 0x0481)) return fold_pair(cp, 0);
  if (in(cp, 0x048A, 0x04BF)) return fold_pair(cp, 0);
  if (cp == 0x04C0) return 0x04CF;
  if (in(cp, 0x04C1, 0x04CE)) return fold_pair(cp, 1);
  if (in(cp, 0x04D0, 0x052F)) return fold_pair(cp, 0);

  if (in(cp, 0x0531, 0x0556)) return cp + 48;
  if (in(cp, 0x10A0, 0x10C5)) return cp + 0x1C60;

  // Latin Extended Additional.
  if (in(cp, 0x1E00, 0x1E95)) return fold_pair(cp, 0);
  if (cp == 0x1E9E) return 0x00DF;
  if (in(cp, 0x1EA0, 0x1EFF)) return fold_pair(cp, 0);

  if (in(cp, 0xFF21, 0xFF3A)) return cp + 32;
  return cp;
}

}  // namespace zgptda::unicode
