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

// Writes a synthetic PAN-format corpus whose two classes differ in their
// token distributions. Output is a pure function of the flags.
//
//   make_synthetic_corpus --out DIR [--per-class 60] [--tweets 100] [--seed 2020]
//                         [--signal 0.12] [--lang en]

#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spreader/corpus.hpp"
#include "spreader/detail/random.hpp"

namespace {

using spreader::detail::uniform_below;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

std::string make_word(std::mt19937_64& rng, const std::vector<std::string>& syllables) {
  const std::size_t parts = 2 + uniform_below(rng, 2);
  std::string w;
  for (std::size_t i = 0; i < parts; ++i) w += syllables[uniform_below(rng, syllables.size())];
  return w;
}

std::vector<std::string> make_pool(std::mt19937_64& rng, const std::vector<std::string>& syllables,
                                   std::size_t n) {
  std::vector<std::string> pool;
  for (std::size_t i = 0; i < n; ++i) pool.push_back(make_word(rng, syllables));
  return pool;
}

std::string hex_id(std::mt19937_64& rng) {
  static const char* kHex = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 32; ++i) id.push_back(kHex[uniform_below(rng, 16)]);
  return id;
}

struct ClassProfile {
  std::vector<std::string> own_words;
  double p_user;
  double p_hashtag;
  double p_url;
  double p_retweet;
  double p_caps;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic PAN-format corpus generator"};
  std::string out;
  std::size_t per_class = 60;
  std::size_t tweets = 100;
  std::uint64_t seed = 2020;
  double signal = 0.12;
  std::string lang = "en";
  app.add_option("--out", out, "output directory")->required();
  app.add_option("--per-class", per_class, "authors per class");
  app.add_option("--tweets", tweets, "tweets per author");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--signal", signal, "probability that a word comes from the class pool");
  app.add_option("--lang", lang, "language tag written into the files");
  CLI11_PARSE(app, argc, argv);

  const auto language = spreader::parse_language(lang).value_or(spreader::Language::kEn);
  std::mt19937_64 rng(seed);
  const std::vector<std::string> syllables = {
      "ka", "lo", "mi", "ter", "san", "po", "ri", "den", "ul", "ver", "ton", "na",
      "bre", "gus", "al", "in", "mor", "ste", "qua", "fi", "rel", "do", "wen", "ix"};
  const auto shared = make_pool(rng, syllables, 400);
  ClassProfile credible{make_pool(rng, syllables, 80), 0.35, 0.30, 0.45, 0.20, 0.03};
  ClassProfile fake{make_pool(rng, syllables, 80), 0.15, 0.15, 0.60, 0.10, 0.06};

  std::vector<spreader::AuthorDocument> authors;
  for (int cls = 0; cls < 2; ++cls) {
    const ClassProfile& profile = cls == 0 ? credible : fake;
    for (std::size_t a = 0; a < per_class; ++a) {
      spreader::AuthorDocument doc;
      doc.author_id = hex_id(rng);
      doc.label = cls == 0 ? spreader::Label::kTrueNewsSpreader
                           : spreader::Label::kFakeNewsSpreader;
      for (std::size_t t = 0; t < tweets; ++t) {
        std::string tweet;
        const auto add = [&tweet](const std::string& token) {
          if (!tweet.empty()) tweet.push_back(' ');
          tweet += token;
        };
        if (uniform01(rng) < profile.p_retweet) add("RT #USER#:");
        const std::size_t words = 6 + uniform_below(rng, 10);
        for (std::size_t w = 0; w < words; ++w) {
          const auto& pool = uniform01(rng) < signal ? profile.own_words : shared;
          std::string word = pool[uniform_below(rng, pool.size())];
          if (uniform01(rng) < profile.p_caps) {
            for (auto& c : word) c = static_cast<char>(c - 'a' + 'A');
          }
          add(word);
          const double r = uniform01(rng);
          if (r < 0.02) add(std::to_string(uniform_below(rng, 1000)));
          else if (r < 0.03) add("\xF0\x9F\x98\x82");  // U+1F602
          else if (r < 0.04) add("the");
        }
        if (uniform01(rng) < profile.p_user) add("#USER#");
        if (uniform01(rng) < profile.p_hashtag) add("#HASHTAG#");
        if (uniform01(rng) < profile.p_url) add("#URL#");
        doc.tweets.push_back(tweet);
      }
      authors.push_back(std::move(doc));
    }
  }
  spreader::save_corpus(spreader::Corpus(language, std::move(authors)), out);
  std::cout << "wrote " << 2 * per_class << " authors to " << out << "\n";
  return 0;
}
