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

#ifndef SPREADER_STOPWORDS_HPP_
#define SPREADER_STOPWORDS_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>

#include "spreader/corpus.hpp"
#include "spreader/error.hpp"
#include "spreader/label.hpp"
#include "spreader/stopwords_data.hpp"
#include "spreader/utf8.hpp"

namespace spreader {

/// Lowercase stopwords for one language. The bundled lists are the NLTK
/// English and Spanish lists, embedded from resources/stopwords at build time.
class StopwordList {
 public:
  /// One word per line; blank lines and lines starting with `#` are skipped.
  static StopwordList parse(Language language, std::string_view text) {
    StopwordList list;
    list.language_ = language;
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
        line.remove_suffix(1);
      }
      while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
      if (line.empty() || line.front() == '#') continue;
      list.words_.insert(utf8::to_lower(line));
    }
    if (list.words_.empty()) {
      throw Error(ErrorCode::kInvalidConfig, "stopword list is empty");
    }
    return list;
  }

  static StopwordList from_file(Language language, const std::filesystem::path& path) {
    return parse(language, detail::read_file(path));
  }

  static const StopwordList& for_language(Language language) {
    static const StopwordList en = parse(Language::kEn, resources::kEnglishStopwords);
    static const StopwordList es = parse(Language::kEs, resources::kSpanishStopwords);
    return language == Language::kEn ? en : es;
  }

  Language language() const { return language_; }
  std::size_t size() const { return words_.size(); }
  bool contains(const std::string& word) const { return words_.contains(word); }

 private:
  Language language_ = Language::kEn;
  std::unordered_set<std::string> words_;
};

}  // namespace spreader

#endif  // SPREADER_STOPWORDS_HPP_
