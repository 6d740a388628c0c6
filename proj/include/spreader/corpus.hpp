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

#ifndef SPREADER_CORPUS_HPP_
#define SPREADER_CORPUS_HPP_

// PAN author-profiling corpus I/O: one XML file per author holding the
// tweets in <document> elements, plus a truth.txt file of
// `<author_id>:::<label>` lines.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "spreader/detail/random.hpp"
#include "spreader/error.hpp"
#include "spreader/label.hpp"

namespace spreader {

inline constexpr std::size_t kTweetsPerAuthor = 100;

/// Non-fatal findings collected while loading data.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

struct AuthorDocument {
  std::string author_id;
  std::vector<std::string> tweets;
  std::optional<Label> label;

  friend bool operator==(const AuthorDocument&, const AuthorDocument&) = default;
};

inline bool is_valid_author_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  });
}

/// An immutable set of authors in one language, ordered by author id.
/// Either every author carries a label or none does.
class Corpus {
 public:
  Corpus() = default;

  Corpus(Language language, std::vector<AuthorDocument> authors)
      : language_(language), authors_(std::move(authors)) {
    std::sort(authors_.begin(), authors_.end(),
              [](const AuthorDocument& a, const AuthorDocument& b) {
                return a.author_id < b.author_id;
              });
    for (std::size_t i = 1; i < authors_.size(); ++i) {
      if (authors_[i].author_id == authors_[i - 1].author_id) {
        throw Error(ErrorCode::kDuplicateAuthorId, authors_[i].author_id);
      }
    }
    const auto labeled = std::count_if(authors_.begin(), authors_.end(),
                                       [](const auto& a) { return a.label.has_value(); });
    if (labeled != 0 && labeled != static_cast<std::ptrdiff_t>(authors_.size())) {
      throw Error(ErrorCode::kUnlabeledAuthor,
                  "corpus mixes labeled and unlabeled authors");
    }
  }

  Language language() const { return language_; }
  const std::vector<AuthorDocument>& authors() const { return authors_; }
  std::size_t size() const { return authors_.size(); }
  bool empty() const { return authors_.empty(); }
  bool labeled() const { return !authors_.empty() && authors_.front().label.has_value(); }

  std::size_t count(Label label) const {
    return static_cast<std::size_t>(
        std::count_if(authors_.begin(), authors_.end(),
                      [label](const auto& a) { return a.label == label; }));
  }

  std::vector<Label> labels() const {
    std::vector<Label> out;
    out.reserve(authors_.size());
    for (const auto& a : authors_) out.push_back(a.label.value());
    return out;
  }

  const Diagnostics& diagnostics() const { return diagnostics_; }
  Diagnostics& diagnostics() { return diagnostics_; }

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.language_ == b.language_ && a.authors_ == b.authors_;
  }

 private:
  Language language_ = Language::kEn;
  std::vector<AuthorDocument> authors_;
  Diagnostics diagnostics_;
};

/// Train fraction as an exact rational so per-class floors are exact.
struct SplitSpec {
  std::uint64_t numerator = 7;
  std::uint64_t denominator = 10;
  std::uint64_t seed = 42;
};

// ---------------------------------------------------------------------------
// XML author files

namespace detail {

using boost::property_tree::ptree;

inline const ptree* find_documents(const ptree& root) {
  if (auto it = root.find("documents"); it != root.not_found()) return &it->second;
  for (const auto& [name, child] : root) {
    if (name == "<xmlattr>" || name == "<xmlcomment>") continue;
    if (auto it = child.find("documents"); it != child.not_found()) return &it->second;
  }
  return nullptr;
}

}  // namespace detail

/// Parses one PAN author file. Tweets come back in file order with entities
/// decoded and CDATA unwrapped; the label is left empty.
inline AuthorDocument parse_author_xml(std::string_view raw_bytes,
                                       std::string author_id,
                                       Diagnostics* diagnostics = nullptr) {
  namespace pt = boost::property_tree;
  if (!is_valid_author_id(author_id)) {
    throw Error(ErrorCode::kInvalidAuthorId, "'" + author_id + "'");
  }
  pt::ptree tree;
  try {
    std::istringstream in{std::string(raw_bytes)};
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::kMalformedXml, author_id + ": " + e.message() + " (line " +
                                              std::to_string(e.line()) + ")");
  }
  const pt::ptree* documents = detail::find_documents(tree);
  if (documents == nullptr) {
    throw Error(ErrorCode::kMalformedXml, author_id + ": no <documents> element");
  }
  AuthorDocument doc;
  doc.author_id = std::move(author_id);
  for (const auto& [name, child] : *documents) {
    if (name == "document") doc.tweets.push_back(child.data());
  }
  if (doc.tweets.empty()) {
    throw Error(ErrorCode::kEmptyAuthor, doc.author_id + ": no <document> elements");
  }
  if (doc.tweets.size() != kTweetsPerAuthor && diagnostics != nullptr) {
    diagnostics->warn(doc.author_id + ": " + std::to_string(doc.tweets.size()) +
                      " tweets (expected " + std::to_string(kTweetsPerAuthor) + ")");
  }
  return doc;
}

/// Serializes an author in the PAN layout; parse_author_xml inverts it.
inline std::string write_author_xml(const AuthorDocument& doc, Language language) {
  std::string out = "<author lang=\"";
  out += language_code(language);
  out += "\">\n\t<documents>\n";
  for (const auto& tweet : doc.tweets) {
    out += "\t\t<document><![CDATA[";
    // "]]>" cannot appear inside a CDATA section; split it across two.
    std::size_t pos = 0;
    while (true) {
      const auto hit = tweet.find("]]>", pos);
      if (hit == std::string::npos) {
        out.append(tweet, pos);
        break;
      }
      out.append(tweet, pos, hit - pos);
      out += "]]]]><![CDATA[>";
      pos = hit + 3;
    }
    out += "]]></document>\n";
  }
  out += "\t</documents>\n</author>\n";
  return out;
}

// ---------------------------------------------------------------------------
// Truth files

inline std::map<std::string, Label> parse_truth_file(std::string_view text) {
  std::map<std::string, Label> truth;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty()) continue;
    const auto sep = line.find(":::");
    if (sep == std::string_view::npos) {
      throw Error(ErrorCode::kMalformedTruthLine,
                  "line " + std::to_string(line_no) + ": missing ':::' separator");
    }
    const std::string id(line.substr(0, sep));
    const auto label = parse_label(line.substr(sep + 3));
    if (!is_valid_author_id(id) || !label) {
      throw Error(ErrorCode::kMalformedTruthLine,
                  "line " + std::to_string(line_no) + ": '" + std::string(line) + "'");
    }
    if (!truth.emplace(id, *label).second) {
      throw Error(ErrorCode::kDuplicateAuthorId, id + " (line " + std::to_string(line_no) + ")");
    }
  }
  return truth;
}

inline std::string format_truth_line(std::string_view author_id, Label label) {
  return std::string(author_id) + ":::" + std::to_string(label_value(label)) + "\n";
}

// ---------------------------------------------------------------------------
// Directory loading

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace detail

/// Loads `<dir>/<author_id>.xml` files and, when present, `<dir>/truth.txt`.
/// The result does not depend on directory listing order.
inline Corpus load_corpus(const std::filesystem::path& directory, Language language) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) {
    throw Error(ErrorCode::kIoError, directory.string() + " is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  // Parse in contiguous chunks; results are reassembled in sorted order.
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  const std::size_t chunk = (files.size() + workers - 1) / std::max<std::size_t>(workers, 1);
  std::vector<std::future<std::pair<std::vector<AuthorDocument>, Diagnostics>>> jobs;
  for (std::size_t begin = 0; begin < files.size(); begin += chunk) {
    const std::size_t end = std::min(files.size(), begin + chunk);
    jobs.push_back(std::async(std::launch::async, [&files, begin, end] {
      std::pair<std::vector<AuthorDocument>, Diagnostics> result;
      for (std::size_t i = begin; i < end; ++i) {
        result.first.push_back(parse_author_xml(detail::read_file(files[i]),
                                                files[i].stem().string(), &result.second));
      }
      return result;
    }));
  }
  std::vector<AuthorDocument> authors;
  Diagnostics diagnostics;
  for (auto& job : jobs) {
    auto [docs, diag] = job.get();
    for (auto& d : docs) authors.push_back(std::move(d));
    for (auto& w : diag.warnings) diagnostics.warn(std::move(w));
  }

  const fs::path truth_path = directory / "truth.txt";
  if (fs::exists(truth_path)) {
    const auto truth = parse_truth_file(detail::read_file(truth_path));
    std::set<std::string> present;
    for (auto& author : authors) {
      const auto it = truth.find(author.author_id);
      if (it == truth.end()) {
        throw Error(ErrorCode::kUnlabeledAuthor, author.author_id + " is not in truth.txt");
      }
      author.label = it->second;
      present.insert(author.author_id);
    }
    for (const auto& [id, label] : truth) {
      if (!present.contains(id)) {
        throw Error(ErrorCode::kMissingAuthorFile, id + ".xml referenced by truth.txt");
      }
    }
  }
  Corpus corpus(language, std::move(authors));
  corpus.diagnostics() = std::move(diagnostics);
  return corpus;
}

/// Writes a corpus in the PAN directory layout (truth.txt only if labeled).
inline void save_corpus(const Corpus& corpus, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  std::string truth;
  for (const auto& author : corpus.authors()) {
    std::ofstream out(directory / (author.author_id + ".xml"), std::ios::binary);
    out << write_author_xml(author, corpus.language());
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + author.author_id + ".xml");
    if (author.label) truth += format_truth_line(author.author_id, *author.label);
  }
  if (corpus.labeled()) {
    std::ofstream out(directory / "truth.txt", std::ios::binary);
    out << truth;
  }
}

// ---------------------------------------------------------------------------
// Splitting

namespace detail {

inline std::vector<std::vector<std::size_t>> class_members(const Corpus& corpus) {
  if (!corpus.labeled()) {
    throw Error(ErrorCode::kUnlabeledCorpus, "operation requires a labeled corpus");
  }
  std::vector<std::vector<std::size_t>> members(2);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    members[label_value(*corpus.authors()[i].label)].push_back(i);
  }
  return members;
}

inline Corpus subset(const Corpus& corpus, const std::vector<std::size_t>& indices) {
  std::vector<AuthorDocument> authors;
  authors.reserve(indices.size());
  for (std::size_t i : indices) authors.push_back(corpus.authors()[i]);
  return Corpus(corpus.language(), std::move(authors));
}

}  // namespace detail

/// Stratified, seeded split: floor(class_count * fraction) authors of each
/// class go to train, the rest to test.
inline std::pair<Corpus, Corpus> split_corpus(const Corpus& corpus, const SplitSpec& spec) {
  if (spec.denominator == 0 || spec.numerator == 0 || spec.numerator >= spec.denominator) {
    throw Error(ErrorCode::kInvalidConfig, "train fraction must lie in (0,1)");
  }
  auto members = detail::class_members(corpus);
  std::mt19937_64 rng(spec.seed);
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  for (int cls = 0; cls < 2; ++cls) {
    auto& ids = members[cls];
    if (ids.empty()) continue;
    detail::seeded_shuffle(std::span<std::size_t>(ids), rng);
    const std::size_t n_train = ids.size() * spec.numerator / spec.denominator;
    if (n_train == 0) {
      throw Error(ErrorCode::kDegenerateSplit,
                  "class " + std::to_string(cls) + " gets no training authors");
    }
    train.insert(train.end(), ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_train));
    test.insert(test.end(), ids.begin() + static_cast<std::ptrdiff_t>(n_train), ids.end());
  }
  return {detail::subset(corpus, train), detail::subset(corpus, test)};
}

/// Stratified k-fold partition; fold i is the test side of pair i.
inline std::vector<std::pair<Corpus, Corpus>> kfold_corpus(const Corpus& corpus,
                                                           std::size_t folds,
                                                           std::uint64_t seed) {
  if (folds < 2) throw Error(ErrorCode::kInvalidConfig, "k-fold needs at least 2 folds");
  auto members = detail::class_members(corpus);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> fold_of(corpus.size());
  for (auto& ids : members) {
    if (!ids.empty() && ids.size() < folds) {
      throw Error(ErrorCode::kDegenerateSplit, "a class has fewer authors than folds");
    }
    detail::seeded_shuffle(std::span<std::size_t>(ids), rng);
    for (std::size_t k = 0; k < ids.size(); ++k) fold_of[ids[k]] = k % folds;
  }
  std::vector<std::pair<Corpus, Corpus>> out;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    for (std::size_t i = 0; i < corpus.size(); ++i) (fold_of[i] == f ? test : train).push_back(i);
    out.emplace_back(detail::subset(corpus, train), detail::subset(corpus, test));
  }
  return out;
}

}  // namespace spreader

#endif  // SPREADER_CORPUS_HPP_
