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

#ifndef SPREADER_VECTORIZE_HPP_
#define SPREADER_VECTORIZE_HPP_

// Character / token n-gram vectorizers with TF-IDF or raw-count weighting,
// frequency-capped vocabularies and feature union.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spreader/error.hpp"
#include "spreader/preprocess.hpp"

namespace spreader {

enum class Analyzer { kChar, kWordToken };
enum class Weighting { kTfIdf, kCount };

inline constexpr int kMaxNgramOrder = 16;
inline constexpr std::size_t kMaxFeaturesLimit = 10'000'000;

struct NgramRange {
  int min_n = 1;
  int max_n = 1;

  void validate() const {
    if (min_n < 1 || max_n < min_n || max_n > kMaxNgramOrder) {
      throw Error(ErrorCode::kInvalidConfig, "invalid n-gram range [" + std::to_string(min_n) +
                                                 ";" + std::to_string(max_n) + "]");
    }
  }

  friend auto operator<=>(const NgramRange&, const NgramRange&) = default;
};

struct VectorizerConfig {
  Analyzer analyzer = Analyzer::kChar;
  NgramRange range{1, 3};
  std::optional<std::size_t> max_features;
  std::size_t min_df = 1;
  Weighting weighting = Weighting::kTfIdf;

  void validate() const {
    range.validate();
    if (max_features && (*max_features < 1 || *max_features > kMaxFeaturesLimit)) {
      throw Error(ErrorCode::kInvalidConfig, "max_features out of [1; 1e7]");
    }
    if (min_df < 1) throw Error(ErrorCode::kInvalidConfig, "min_df must be >= 1");
  }

  /// Compact, stable description, e.g. "tfidf-char[1;3]-max3000-mindf1".
  std::string describe() const {
    std::string s = weighting == Weighting::kTfIdf ? "tfidf" : "count";
    s += analyzer == Analyzer::kChar ? "-char[" : "-word[";
    s += std::to_string(range.min_n) + ";" + std::to_string(range.max_n) + "]";
    s += max_features ? "-max" + std::to_string(*max_features) : std::string("-maxall");
    s += "-mindf" + std::to_string(min_df);
    return s;
  }

  friend auto operator<=>(const VectorizerConfig&, const VectorizerConfig&) = default;
};

/// n-gram -> occurrence count for one document.
using NgramCounts = std::unordered_map<std::string, std::uint32_t>;

/// Every contiguous run of n codepoints for n in the range, spaces included.
inline NgramCounts extract_char_ngrams(std::string_view text, NgramRange range) {
  range.validate();
  // Byte offset of each codepoint start, plus the end.
  std::vector<std::size_t> offsets;
  offsets.reserve(text.size() + 1);
  for (std::size_t b = 0; b < text.size(); ++b) {
    if ((static_cast<unsigned char>(text[b]) & 0xC0) != 0x80) offsets.push_back(b);
  }
  offsets.push_back(text.size());
  const std::size_t length = offsets.size() - 1;
  NgramCounts counts;
  for (int n = range.min_n; n <= range.max_n; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (un > length) break;
    for (std::size_t i = 0; i + un <= length; ++i) {
      ++counts[std::string(text.substr(offsets[i], offsets[i + un] - offsets[i]))];
    }
  }
  return counts;
}

/// Token n-grams, tokens joined with a single space.
inline NgramCounts extract_word_ngrams(std::span<const std::string> tokens, NgramRange range) {
  range.validate();
  NgramCounts counts;
  for (int n = range.min_n; n <= range.max_n; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (un > tokens.size()) break;
    for (std::size_t i = 0; i + un <= tokens.size(); ++i) {
      std::string gram = tokens[i];
      for (std::size_t k = 1; k < un; ++k) {
        gram.push_back(' ');
        gram += tokens[i + k];
      }
      ++counts[gram];
    }
  }
  return counts;
}

inline NgramCounts extract_ngrams(const TokenStream& stream, const VectorizerConfig& config) {
  return config.analyzer == Analyzer::kChar ? extract_char_ngrams(stream.joined_text, config.range)
                                            : extract_word_ngrams(stream.tokens, config.range);
}

/// Fitted vocabulary. Index i belongs to terms[i]; terms are sorted.
struct Vocabulary {
  VectorizerConfig config;
  std::vector<std::string> terms;
  std::vector<std::uint32_t> document_frequency;
  std::vector<double> idf;  // empty unless weighting is TF-IDF
  std::size_t corpus_size = 0;

  std::size_t size() const { return terms.size(); }

  /// Terms are sorted, so lookup is a binary search; no mutable state.
  std::optional<std::uint32_t> index_of(std::string_view term) const {
    const auto it = std::lower_bound(terms.begin(), terms.end(), term,
                                     [](const std::string& a, std::string_view b) { return a < b; });
    if (it == terms.end() || *it != term) return std::nullopt;
    return static_cast<std::uint32_t>(it - terms.begin());
  }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

/// Smoothed inverse document frequency: ln((1 + N) / (1 + df)) + 1.
inline double smooth_idf(std::size_t corpus_size, std::size_t df) {
  return std::log((1.0 + static_cast<double>(corpus_size)) / (1.0 + static_cast<double>(df))) + 1.0;
}

/// Fits from precomputed per-document counts, so one extraction can serve
/// several min_df / max_features settings.
inline Vocabulary fit_vocabulary_from_counts(std::span<const NgramCounts> documents,
                                             const VectorizerConfig& config) {
  config.validate();
  if (documents.empty()) throw Error(ErrorCode::kInvalidConfig, "no documents to fit");
  if (config.min_df > documents.size()) {
    throw Error(ErrorCode::kInvalidConfig, "min_df exceeds corpus size");
  }
  struct Stats {
    std::uint64_t tf = 0;
    std::uint32_t df = 0;
  };
  std::unordered_map<std::string_view, Stats> stats;
  for (const auto& doc : documents) {
    for (const auto& [term, count] : doc) {
      auto& s = stats[term];
      s.tf += count;
      s.df += 1;
    }
  }
  struct Candidate {
    std::string_view term;
    Stats stats;
  };
  std::vector<Candidate> kept;
  kept.reserve(stats.size());
  for (const auto& [term, s] : stats) {
    if (s.df >= config.min_df) kept.push_back({term, s});
  }
  if (config.max_features && kept.size() > *config.max_features) {
    const auto cut = kept.begin() + static_cast<std::ptrdiff_t>(*config.max_features);
    std::nth_element(kept.begin(), cut, kept.end(), [](const Candidate& a, const Candidate& b) {
      return a.stats.tf != b.stats.tf ? a.stats.tf > b.stats.tf : a.term < b.term;
    });
    kept.erase(cut, kept.end());
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kEmptyVocabulary, "no term survives " + config.describe());
  }
  std::sort(kept.begin(), kept.end(),
            [](const Candidate& a, const Candidate& b) { return a.term < b.term; });

  Vocabulary vocab;
  vocab.config = config;
  vocab.corpus_size = documents.size();
  vocab.terms.reserve(kept.size());
  vocab.document_frequency.reserve(kept.size());
  for (const auto& c : kept) {
    vocab.terms.emplace_back(c.term);
    vocab.document_frequency.push_back(c.stats.df);
    if (config.weighting == Weighting::kTfIdf) {
      vocab.idf.push_back(smooth_idf(vocab.corpus_size, c.stats.df));
    }
  }
  return vocab;
}

inline Vocabulary fit_vocabulary(std::span<const TokenStream> streams,
                                 const VectorizerConfig& config) {
  config.validate();
  std::vector<NgramCounts> documents;
  documents.reserve(streams.size());
  for (const auto& s : streams) documents.push_back(extract_ngrams(s, config));
  return fit_vocabulary_from_counts(documents, config);
}

/// Sparse row: strictly increasing indices, no explicit zeros.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;
  std::size_t dimension = 0;

  bool empty() const { return entries.empty(); }

  double norm() const {
    double sq = 0.0;
    for (const auto& [i, v] : entries) sq += v * v;
    return std::sqrt(sq);
  }

  double dot(std::span<const double> dense) const {
    double sum = 0.0;
    for (const auto& [i, v] : entries) sum += v * dense[i];
    return sum;
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

inline SparseVector transform_counts(const NgramCounts& counts, const Vocabulary& vocab) {
  SparseVector out;
  out.dimension = vocab.size();
  out.entries.reserve(counts.size());
  for (const auto& [term, count] : counts) {
    if (const auto index = vocab.index_of(term)) {
      out.entries.emplace_back(*index, static_cast<double>(count));
    }
  }
  std::sort(out.entries.begin(), out.entries.end());
  if (vocab.config.weighting == Weighting::kTfIdf) {
    for (auto& [i, v] : out.entries) v *= vocab.idf[i];
    const double norm = out.norm();
    if (norm > 0.0) {
      for (auto& entry : out.entries) entry.second /= norm;
    }
  }
  return out;
}

inline SparseVector transform(const TokenStream& stream, const Vocabulary& vocab) {
  return transform_counts(extract_ngrams(stream, vocab.config), vocab);
}

/// Concatenates two blocks; b's indices shift by a's dimension.
inline SparseVector feature_union(const SparseVector& a, const SparseVector& b) {
  SparseVector out;
  out.dimension = a.dimension + b.dimension;
  out.entries.reserve(a.entries.size() + b.entries.size());
  out.entries = a.entries;
  for (const auto& [i, v] : b.entries) {
    out.entries.emplace_back(static_cast<std::uint32_t>(i + a.dimension), v);
  }
  return out;
}

/// One or more fitted vocabularies whose outputs are unioned in order.
struct FeatureSpec {
  std::vector<Vocabulary> blocks;

  std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& b : blocks) d += b.size();
    return d;
  }

  SparseVector vectorize(const TokenStream& stream) const {
    SparseVector out;
    for (const auto& block : blocks) out = feature_union(out, transform(stream, block));
    return out;
  }

  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

inline FeatureSpec fit_features(std::span<const TokenStream> streams,
                                std::span<const VectorizerConfig> configs) {
  if (configs.empty()) throw Error(ErrorCode::kInvalidConfig, "no vectorizer blocks");
  FeatureSpec spec;
  for (const auto& config : configs) spec.blocks.push_back(fit_vocabulary(streams, config));
  return spec;
}

}  // namespace spreader

#endif  // SPREADER_VECTORIZE_HPP_
