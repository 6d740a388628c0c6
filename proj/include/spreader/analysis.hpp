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

#ifndef SPREADER_ANALYSIS_HPP_
#define SPREADER_ANALYSIS_HPP_

// Per-class corpus statistics on raw (unpreprocessed) tweets.
//
// Definitions: a token is a whitespace-delimited chunk; an uppercased token
// has at least two codepoints, all uppercase letters; an uppercased phrase is
// a run of two or more consecutive uppercased tokens inside one tweet,
// counted once per run; a retweet is a tweet whose first token is `RT`;
// placeholder counts are substring occurrences (so `#USER#:` counts).

#include <array>
#include <span>
#include <cstdio>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spreader/corpus.hpp"
#include "spreader/error.hpp"
#include "spreader/utf8.hpp"

namespace spreader {

struct ClassStats {
  std::set<std::string> distinct_tokens;
  std::set<char32_t> distinct_emojis;
  std::size_t emojis_total = 0;
  std::size_t url_tokens = 0;
  std::size_t hashtag_tokens = 0;
  std::size_t user_tokens = 0;
  std::size_t retweets = 0;
  std::size_t uppercased_tokens_total = 0;
  std::size_t uppercased_phrases_total = 0;

  std::size_t unique_tokens() const { return distinct_tokens.size(); }
  std::size_t emojis_unique() const { return distinct_emojis.size(); }

  void merge(const ClassStats& other) {
    distinct_tokens.insert(other.distinct_tokens.begin(), other.distinct_tokens.end());
    distinct_emojis.insert(other.distinct_emojis.begin(), other.distinct_emojis.end());
    emojis_total += other.emojis_total;
    url_tokens += other.url_tokens;
    hashtag_tokens += other.hashtag_tokens;
    user_tokens += other.user_tokens;
    retweets += other.retweets;
    uppercased_tokens_total += other.uppercased_tokens_total;
    uppercased_phrases_total += other.uppercased_phrases_total;
  }

  friend bool operator==(const ClassStats&, const ClassStats&) = default;
};

struct CorpusStats {
  ClassStats true_class;
  ClassStats fake_class;

  const ClassStats& of(Label label) const {
    return label == Label::kFakeNewsSpreader ? fake_class : true_class;
  }

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

namespace detail {

inline std::size_t count_occurrences(std::string_view text, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

inline bool is_uppercased_token(const std::u32string& token) {
  if (token.size() < 2) return false;
  for (char32_t c : token) {
    if (!utf8::is_letter(c) || !utf8::is_upper(c)) return false;
  }
  return true;
}

}  // namespace detail

inline void accumulate_tweet(ClassStats& stats, std::string_view tweet) {
  stats.url_tokens += detail::count_occurrences(tweet, "#URL#");
  stats.hashtag_tokens += detail::count_occurrences(tweet, "#HASHTAG#");
  stats.user_tokens += detail::count_occurrences(tweet, "#USER#");

  const std::u32string cps = utf8::decode(tweet);
  std::vector<std::u32string> tokens;
  std::u32string current;
  for (char32_t c : cps) {
    if (utf8::is_emoji(c)) {
      ++stats.emojis_total;
      stats.distinct_emojis.insert(c);
    }
    if (utf8::is_whitespace(c)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));

  if (!tokens.empty() && tokens.front() == U"RT") ++stats.retweets;
  std::size_t run = 0;
  for (const auto& token : tokens) {
    stats.distinct_tokens.insert(utf8::encode(token));
    if (detail::is_uppercased_token(token)) {
      ++stats.uppercased_tokens_total;
      if (++run == 2) ++stats.uppercased_phrases_total;
    } else {
      run = 0;
    }
  }
}

inline ClassStats class_stats(std::span<const AuthorDocument> authors) {
  ClassStats stats;
  for (const auto& author : authors) {
    for (const auto& tweet : author.tweets) accumulate_tweet(stats, tweet);
  }
  return stats;
}

inline CorpusStats corpus_stats(const Corpus& corpus) {
  if (!corpus.labeled()) throw Error(ErrorCode::kUnlabeledCorpus, "statistics are per class");
  CorpusStats stats;
  for (const auto& author : corpus.authors()) {
    auto& target = *author.label == Label::kFakeNewsSpreader ? stats.fake_class : stats.true_class;
    for (const auto& tweet : author.tweets) accumulate_tweet(target, tweet);
  }
  return stats;
}

/// Two-column (True/Fake) feature distribution table. Rows that need
/// external sentiment or NER models are printed as out of scope.
inline std::string format_stats_table(const CorpusStats& stats, Language language) {
  std::string out;
  const auto row = [&out](std::string_view name, const std::string& t, const std::string& f) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-26s %18s %18s\n", std::string(name).c_str(), t.c_str(),
                  f.c_str());
    out += buf;
  };
  const auto num = [](std::size_t v) { return std::to_string(v); };
  const std::string na = "n/a (out of scope)";
  const auto& t = stats.true_class;
  const auto& f = stats.fake_class;
  out += "Language: " + std::string(language == Language::kEn ? "EN" : "ES") + "\n";
  row("Features", "True", "Fake");
  row("Unique Tokens", num(t.unique_tokens()), num(f.unique_tokens()));
  row("Emojis Total", num(t.emojis_total), num(f.emojis_total));
  row("Emojis Unique", num(t.emojis_unique()), num(f.emojis_unique()));
  row("Neutral Tweets", na, na);
  row("Positive Tweets", na, na);
  row("Negative Tweets", na, na);
  row("Uppercased Tokens Total", num(t.uppercased_tokens_total), num(f.uppercased_tokens_total));
  row("Uppercased Phrases Total", num(t.uppercased_phrases_total), num(f.uppercased_phrases_total));
  row("#URL# Token", num(t.url_tokens), num(f.url_tokens));
  row("#HASHTAG# Token", num(t.hashtag_tokens), num(f.hashtag_tokens));
  row("#USER# Token", num(t.user_tokens), num(f.user_tokens));
  row("Retweets (RT)", num(t.retweets), num(f.retweets));
  row("NER ORG", na, na);
  row("NER PERSON", na, na);
  row("NER LOC", na, na);
  return out;
}

}  // namespace spreader

#endif  // SPREADER_ANALYSIS_HPP_
