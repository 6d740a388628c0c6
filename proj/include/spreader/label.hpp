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

#ifndef SPREADER_LABEL_HPP_
#define SPREADER_LABEL_HPP_

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace spreader {

// 1 marks an author who has shared fake news, 0 a credible author; this is
// the same mapping the PAN truth files use.
enum class Label : int { kTrueNewsSpreader = 0, kFakeNewsSpreader = 1 };

enum class Language { kEn, kEs };

inline int label_value(Label label) { return static_cast<int>(label); }

inline Label other_label(Label label) {
  return label == Label::kFakeNewsSpreader ? Label::kTrueNewsSpreader
                                           : Label::kFakeNewsSpreader;
}

inline std::optional<Label> parse_label(std::string_view text) {
  if (text == "0") return Label::kTrueNewsSpreader;
  if (text == "1") return Label::kFakeNewsSpreader;
  return std::nullopt;
}

inline std::string_view language_code(Language language) {
  return language == Language::kEn ? "en" : "es";
}

inline std::optional<Language> parse_language(std::string_view text) {
  std::string lower;
  for (char c : text) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (lower == "en") return Language::kEn;
  if (lower == "es") return Language::kEs;
  return std::nullopt;
}

}  // namespace spreader

#endif  // SPREADER_LABEL_HPP_
