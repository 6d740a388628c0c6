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

#ifndef SPREADER_PREPROCESS_HPP_
#define SPREADER_PREPROCESS_HPP_

// Tweet normalization pipeline:
//   concatenate -> normalize whitespace -> numbers/emojis to placeholders
//   -> strip irrelevant signs -> squeeze repeats -> tokenize
//   -> lowercase, drop short words and stopwords.
// Length and stopword filtering are token-level, so they run after
// tokenization.

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "spreader/corpus.hpp"
#include "spreader/stopwords.hpp"
#include "spreader/tokenizer.hpp"
#include "spreader/utf8.hpp"

namespace spreader {

inline constexpr std::array<std::string_view, 5> kPlaceholders = {
    "#URL#", "#HASHTAG#", "#USER#", "#NUMBER#", "#EMOJI#"};

inline bool is_placeholder(std::string_view token) {
  return std::find(kPlaceholders.begin(), kPlaceholders.end(), token) != kPlaceholders.end();
}

inline constexpr std::u32string_view kDefaultDeletionSet = U"+*/\\|~^=<>{}[]()";

struct PreprocessOptions {
  /// Characters removed by strip_irrelevant_signs. Must not contain `#`.
  std::u32string deletion_set{kDefaultDeletionSet};
  std::size_t min_token_length = 3;
};

struct TokenStream {
  std::string author_id;
  std::vector<std::string> tokens;
  std::string joined_text;

  friend bool operator==(const TokenStream&, const TokenStream&) = default;
};

inline std::string concatenate_tweets(const AuthorDocument& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.tweets.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += doc.tweets[i];
  }
  return out;
}

inline std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t c : utf8::decode(text)) {
    if (utf8::is_whitespace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    utf8::append(out, c);
  }
  return out;
}

/// Digit runs (with `.`/`,` between digits) become #NUMBER#; emoji
/// codepoints become #EMOJI# and swallow any trailing VS16/ZWJ glue.
inline std::string replace_numbers_and_emojis(std::string_view text) {
  const std::u32string s = utf8::decode(text);
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (utf8::is_ascii_digit(s[i])) {
      std::size_t j = i + 1;
      while (j < s.size()) {
        if (utf8::is_ascii_digit(s[j])) {
          ++j;
        } else if ((s[j] == U'.' || s[j] == U',') && j + 1 < s.size() &&
                   utf8::is_ascii_digit(s[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      out += "#NUMBER#";
      i = j;
    } else if (utf8::is_emoji(s[i])) {
      out += "#EMOJI#";
      ++i;
      while (i < s.size() && utf8::is_emoji_joiner(s[i])) ++i;
    } else {
      utf8::append(out, s[i]);
      ++i;
    }
  }
  return out;
}

inline std::string strip_irrelevant_signs(std::string_view text,
                                          std::u32string_view deletion_set = kDefaultDeletionSet) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : utf8::decode(text)) {
    if (c != U'#' && deletion_set.find(c) != std::u32string_view::npos) continue;
    utf8::append(out, c);
  }
  return out;
}

/// Shortens every run of more than two repeats of a character to two.
/// Runs are compared case-insensitively ("LoOoOL" -> "LoOL"), so lowercasing
/// later in the pipeline cannot create a fresh run.
inline std::string squeeze_repeats(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  char32_t run_char = 0;
  std::size_t run = 0;
  for (char32_t c : utf8::decode(text)) {
    const char32_t key = utf8::to_lower(c);
    if (run > 0 && key == run_char) {
      ++run;
    } else {
      run_char = key;
      run = 1;
    }
    if (run <= 2) utf8::append(out, c);
  }
  return out;
}

inline std::vector<std::string> filter_and_lowercase(const std::vector<std::string>& tokens,
                                                     const StopwordList& stopwords,
                                                     std::size_t min_length = 3) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (is_placeholder(token)) {
      out.push_back(token);
      continue;
    }
    std::string lower = utf8::to_lower(token);
    if (utf8::length(lower) < min_length) continue;
    if (stopwords.contains(lower)) continue;
    out.push_back(std::move(lower));
  }
  return out;
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

inline TokenStream preprocess_author(const AuthorDocument& doc, const StopwordList& stopwords,
                                     const PreprocessOptions& options = {}) {
  std::string text = concatenate_tweets(doc);
  text = normalize_whitespace(text);
  text = replace_numbers_and_emojis(text);
  text = strip_irrelevant_signs(text, options.deletion_set);
  text = squeeze_repeats(text);
  TokenStream stream;
  stream.author_id = doc.author_id;
  stream.tokens = filter_and_lowercase(tokenize(text), stopwords, options.min_token_length);
  stream.joined_text = join_tokens(stream.tokens);
  return stream;
}

inline std::vector<TokenStream> preprocess_corpus(const Corpus& corpus,
                                                  const PreprocessOptions& options = {}) {
  const auto& stopwords = StopwordList::for_language(corpus.language());
  std::vector<TokenStream> streams;
  streams.reserve(corpus.size());
  for (const auto& author : corpus.authors()) {
    streams.push_back(preprocess_author(author, stopwords, options));
  }
  return streams;
}

}  // namespace spreader

#endif  // SPREADER_PREPROCESS_HPP_
