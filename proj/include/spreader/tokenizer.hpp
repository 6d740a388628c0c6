// Copyright 2026 The Spreader Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPREADER_TOKENIZER_HPP_
#define SPREADER_TOKENIZER_HPP_

// Twitter-aware tokenizer. Candidate patterns are tried in priority order at
// each position and the first that matches wins, mirroring the casual-text
// tokenizer in NLTK, with one addition: `#WORD#` placeholders stay whole.
// No pattern consumes whitespace, so tokenizing a single token gives it back.

#include <string>
#include <string_view>
#include <vector>

#include "spreader/utf8.hpp"

namespace spreader {

namespace detail {

using Text = std::u32string_view;

inline bool is_apostrophe(char32_t c) { return c == U'\'' || c == 0x2019; }

inline bool in_set(char32_t c, std::u32string_view set) {
  return set.find(c) != std::u32string_view::npos;
}

inline constexpr std::u32string_view kEyes = U":;=8";
inline constexpr std::u32string_view kNoses = U"-o*'";
inline constexpr std::u32string_view kMouths = U")](['dDpP/:}{@|\\";

// `#` ASCII-letters `#`
inline std::size_t match_placeholder(Text s, std::size_t i) {
  if (s[i] != U'#') return 0;
  std::size_t j = i + 1;
  while (j < s.size() && ((s[j] >= U'A' && s[j] <= U'Z') || (s[j] >= U'a' && s[j] <= U'z'))) ++j;
  if (j == i + 1 || j >= s.size() || s[j] != U'#') return 0;
  return j + 1 - i;
}

inline std::size_t match_emoticon(Text s, std::size_t i) {
  const auto at = [&](std::size_t k) -> char32_t { return k < s.size() ? s[k] : 0; };
  // [<>]? eyes nose? mouth
  for (std::size_t hat : {1u, 0u}) {
    if (hat == 1 && !(at(i) == U'<' || at(i) == U'>')) continue;
    std::size_t k = i + hat;
    if (!in_set(at(k), kEyes) || at(k) == 0) continue;
    ++k;
    if (at(k) != 0 && in_set(at(k), kNoses) && at(k + 1) != 0 && in_set(at(k + 1), kMouths)) {
      return k + 2 - i;
    }
    if (at(k) != 0 && in_set(at(k), kMouths)) return k + 1 - i;
  }
  // mouth nose? eyes [<>]?
  if (at(i) != 0 && in_set(at(i), kMouths)) {
    std::size_t k = i + 1;
    for (std::size_t nose : {1u, 0u}) {
      std::size_t e = k;
      if (nose == 1) {
        if (at(e) == 0 || !in_set(at(e), kNoses)) continue;
        ++e;
      }
      if (at(e) != 0 && in_set(at(e), kEyes)) {
        const bool hat = at(e + 1) == U'<' || at(e + 1) == U'>';
        return e + 1 + (hat ? 1 : 0) - i;
      }
    }
  }
  // <3 and </3
  if (at(i) == U'<') {
    if (at(i + 1) == U'3') return 2;
    if (at(i + 1) == U'/' && at(i + 2) == U'3') return 3;
  }
  return 0;
}

// @handle
inline std::size_t match_handle(Text s, std::size_t i) {
  if (s[i] != U'@') return 0;
  std::size_t j = i + 1;
  while (j < s.size() && utf8::is_word_char(s[j])) ++j;
  return j > i + 1 ? j - i : 0;
}

// #+ word ([word'_-]*) word
inline std::size_t match_hashtag(Text s, std::size_t i) {
  std::size_t j = i;
  while (j < s.size() && s[j] == U'#') ++j;
  if (j == i) return 0;
  const std::size_t body = j;
  std::size_t last_word = 0;
  while (j < s.size() && (utf8::is_word_char(s[j]) || is_apostrophe(s[j]) || s[j] == U'-')) {
    if (utf8::is_word_char(s[j])) last_word = j;
    ++j;
  }
  if (j == body || !utf8::is_word_char(s[body]) || last_word <= body) return 0;
  return last_word + 1 - i;
}

// letter (letter|'|-|_)+ letter
inline std::size_t match_apostrophe_word(Text s, std::size_t i) {
  if (!utf8::is_letter(s[i])) return 0;
  std::size_t j = i + 1;
  std::size_t last_letter = i;
  while (j < s.size() &&
         (utf8::is_letter(s[j]) || is_apostrophe(s[j]) || s[j] == U'-' || s[j] == U'_')) {
    if (utf8::is_letter(s[j])) last_letter = j;
    ++j;
  }
  return last_letter >= i + 2 ? last_letter + 1 - i : 0;
}

// [+-]? digits [,/.:-] digits [+-]?
inline std::size_t match_number(Text s, std::size_t i) {
  std::size_t j = i;
  if (j < s.size() && (s[j] == U'+' || s[j] == U'-')) ++j;
  const std::size_t d0 = j;
  while (j < s.size() && utf8::is_ascii_digit(s[j])) ++j;
  if (j == d0 || j + 1 >= s.size()) return 0;
  if (!in_set(s[j], U",/.:-") || !utf8::is_ascii_digit(s[j + 1])) return 0;
  j += 1;
  while (j < s.size() && utf8::is_ascii_digit(s[j])) ++j;
  if (j < s.size() && (s[j] == U'+' || s[j] == U'-')) ++j;
  return j - i;
}

inline std::size_t match_word(Text s, std::size_t i) {
  std::size_t j = i;
  while (j < s.size() && utf8::is_word_char(s[j])) ++j;
  return j - i;
}

inline std::size_t match_ellipsis(Text s, std::size_t i) {
  std::size_t j = i;
  while (j < s.size() && s[j] == U'.') ++j;
  return j - i >= 2 ? j - i : 0;
}

}  // namespace detail

inline std::vector<std::string> tokenize(std::string_view text) {
  const std::u32string cps = utf8::decode(text);
  const detail::Text s(cps);
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    if (utf8::is_whitespace(s[i])) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    for (auto matcher : {detail::match_placeholder, detail::match_emoticon,
                         detail::match_handle, detail::match_hashtag,
                         detail::match_apostrophe_word, detail::match_number,
                         detail::match_word, detail::match_ellipsis}) {
      len = matcher(s, i);
      if (len > 0) break;
    }
    if (len == 0) len = 1;
    tokens.push_back(utf8::encode(s.substr(i, len)));
    i += len;
  }
  return tokens;
}

}  // namespace spreader

#endif  // SPREADER_TOKENIZER_HPP_
