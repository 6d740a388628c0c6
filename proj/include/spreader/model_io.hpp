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

#ifndef SPREADER_MODEL_IO_HPP_
#define SPREADER_MODEL_IO_HPP_

// Text model format, version 1:
//
//   SPREADER-MODEL
//   version 1
//   kind svm|logreg
//   language en|es
//   config c=<hex> tolerance=<hex> max_iterations=<n> loss=<name> fit_intercept=0|1
//   blocks <count>
//   block analyzer=char|word min_n=<n> max_n=<n> max_features=<n>|none min_df=<n>
//         weighting=tfidf|count corpus_size=<n> terms=<count>          (one line)
//   <escaped term>\t<index>\t<df>\t<idf hex>|-                         (per term)
//   weights <dimension>
//   bias <hex>
//   <index>:<hex>                                                      (non-(+0) only)
//   checksum <crc32 of every preceding byte, 8 hex digits>
//
// Reals are C99 hexadecimal floats, so values round-trip exactly.

#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/crc.hpp>

#include "spreader/corpus.hpp"
#include "spreader/error.hpp"
#include "spreader/models.hpp"

namespace spreader {

inline constexpr std::string_view kModelMagic = "SPREADER-MODEL";
inline constexpr int kModelFormatVersion = 1;

namespace detail {

inline std::string hex_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

inline double parse_hex_double(std::string_view s) {
  const std::string copy(s);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw Error(ErrorCode::kCorruptModelFile, "bad real '" + copy + "'");
  }
  return v;
}

inline std::uint64_t parse_uint(std::string_view s) {
  if (s.empty() || s.size() > 19) throw Error(ErrorCode::kCorruptModelFile, "bad integer");
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::kCorruptModelFile, "bad integer '" + std::string(s) + "'");
    }
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

inline std::string escape_term(std::string_view term) {
  std::string out;
  for (char ch : term) {
    const auto c = static_cast<unsigned char>(ch);
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\x%02X", c);
          out += buf;
        } else {
          out.push_back(ch);
        }
    }
  }
  return out;
}

inline std::string unescape_term(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (++i >= s.size()) throw Error(ErrorCode::kCorruptModelFile, "dangling escape");
    switch (s[i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case 'x': {
        if (i + 2 >= s.size() || !std::isxdigit(static_cast<unsigned char>(s[i + 1])) ||
            !std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
          throw Error(ErrorCode::kCorruptModelFile, "bad \\x escape");
        }
        const std::string hex(s.substr(i + 1, 2));
        out.push_back(static_cast<char>(std::strtoul(hex.c_str(), nullptr, 16)));
        i += 2;
        break;
      }
      default: throw Error(ErrorCode::kCorruptModelFile, "unknown escape");
    }
  }
  return out;
}

inline std::uint32_t crc32(std::string_view bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

/// `key=value` fields of one header line after its leading keyword.
class Fields {
 public:
  Fields(std::string_view line, std::string_view keyword) {
    std::istringstream in{std::string(line)};
    std::string word;
    in >> word;
    if (word != keyword) {
      throw Error(ErrorCode::kCorruptModelFile, "expected '" + std::string(keyword) + "' line");
    }
    while (in >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::kCorruptModelFile, "bad field " + word);
      pairs_.emplace_back(word.substr(0, eq), word.substr(eq + 1));
    }
  }

  const std::string& get(std::string_view key) const {
    for (const auto& [k, v] : pairs_) {
      if (k == key) return v;
    }
    throw Error(ErrorCode::kCorruptModelFile, "missing field " + std::string(key));
  }

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
};

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  std::string_view next() {
    if (pos_ >= text_.size()) throw Error(ErrorCode::kCorruptModelFile, "unexpected end of file");
    const auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) {
      throw Error(ErrorCode::kCorruptModelFile, "unterminated line");
    }
    const auto line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return line;
  }

  std::string_view value_after(std::string_view keyword) {
    const auto line = next();
    if (line.size() <= keyword.size() + 1 || line.substr(0, keyword.size()) != keyword ||
        line[keyword.size()] != ' ') {
      throw Error(ErrorCode::kCorruptModelFile, "expected '" + std::string(keyword) + "' line");
    }
    return line.substr(keyword.size() + 1);
  }

  bool at_end() const { return pos_ >= text_.size(); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string serialize_model(const LinearModel& model) {
  using detail::hex_double;
  std::string out;
  out += std::string(kModelMagic) + "\n";
  out += "version " + std::to_string(kModelFormatVersion) + "\n";
  out += "kind " + std::string(model_kind_name(model.kind)) + "\n";
  out += "language " + std::string(language_code(model.language)) + "\n";
  out += "config c=" + hex_double(model.config.c) +
         " tolerance=" + hex_double(model.config.tolerance) +
         " max_iterations=" + std::to_string(model.config.max_iterations) +
         " loss=" + (model.config.loss == Loss::kSquaredHinge ? "squared_hinge" : "logistic") +
         " fit_intercept=" + (model.config.fit_intercept ? "1" : "0") + "\n";
  out += "blocks " + std::to_string(model.features.blocks.size()) + "\n";
  for (const auto& vocab : model.features.blocks) {
    const auto& c = vocab.config;
    out += "block analyzer=" + std::string(c.analyzer == Analyzer::kChar ? "char" : "word") +
           " min_n=" + std::to_string(c.range.min_n) + " max_n=" + std::to_string(c.range.max_n) +
           " max_features=" + (c.max_features ? std::to_string(*c.max_features) : "none") +
           " min_df=" + std::to_string(c.min_df) +
           " weighting=" + (c.weighting == Weighting::kTfIdf ? "tfidf" : "count") +
           " corpus_size=" + std::to_string(vocab.corpus_size) +
           " terms=" + std::to_string(vocab.size()) + "\n";
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      out += detail::escape_term(vocab.terms[i]);
      out += "\t" + std::to_string(i) + "\t" + std::to_string(vocab.document_frequency[i]) + "\t";
      out += vocab.idf.empty() ? "-" : hex_double(vocab.idf[i]);
      out += "\n";
    }
  }
  out += "weights " + std::to_string(model.weights.size()) + "\n";
  out += "bias " + hex_double(model.bias) + "\n";
  for (std::size_t j = 0; j < model.weights.size(); ++j) {
    const double w = model.weights[j];
    if (w == 0.0 && !std::signbit(w)) continue;
    out += std::to_string(j) + ":" + hex_double(w) + "\n";
  }
  char crc[16];
  std::snprintf(crc, sizeof crc, "%08" PRIx32, detail::crc32(out));
  out += "checksum " + std::string(crc) + "\n";
  return out;
}

inline LinearModel deserialize_model(std::string_view text) {
  detail::LineReader header(text);
  if (header.next() != kModelMagic) {
    throw Error(ErrorCode::kCorruptModelFile, "not a model file");
  }
  const auto version = detail::parse_uint(header.value_after("version"));
  if (version != kModelFormatVersion) {
    throw Error(ErrorCode::kUnsupportedVersion, "model format version " + std::to_string(version));
  }

  // The checksum line is the last line; it covers everything before it.
  const auto tail = text.rfind("checksum ");
  if (tail == std::string_view::npos || (tail > 0 && text[tail - 1] != '\n') ||
      text.empty() || text.back() != '\n') {
    throw Error(ErrorCode::kCorruptModelFile, "missing checksum");
  }
  const auto stored = text.substr(tail + 9, text.size() - tail - 10);
  char computed[16];
  std::snprintf(computed, sizeof computed, "%08" PRIx32, detail::crc32(text.substr(0, tail)));
  if (stored != computed) throw Error(ErrorCode::kCorruptModelFile, "checksum mismatch");

  detail::LineReader in(text.substr(0, tail));
  in.next();
  in.next();
  LinearModel model;
  const auto kind = in.value_after("kind");
  if (kind == "svm") {
    model.kind = ModelKind::kSvm;
  } else if (kind == "logreg") {
    model.kind = ModelKind::kLogReg;
  } else {
    throw Error(ErrorCode::kCorruptModelFile, "unknown kind");
  }
  const auto lang = parse_language(in.value_after("language"));
  if (!lang) throw Error(ErrorCode::kCorruptModelFile, "unknown language");
  model.language = *lang;

  const detail::Fields config(in.next(), "config");
  model.config.c = detail::parse_hex_double(config.get("c"));
  model.config.tolerance = detail::parse_hex_double(config.get("tolerance"));
  model.config.max_iterations = static_cast<int>(detail::parse_uint(config.get("max_iterations")));
  const auto& loss = config.get("loss");
  if (loss != "squared_hinge" && loss != "logistic") {
    throw Error(ErrorCode::kCorruptModelFile, "unknown loss");
  }
  model.config.loss = loss == "logistic" ? Loss::kLogistic : Loss::kSquaredHinge;
  model.config.fit_intercept = config.get("fit_intercept") == "1";

  const auto blocks = detail::parse_uint(in.value_after("blocks"));
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const detail::Fields f(in.next(), "block");
    Vocabulary vocab;
    auto& c = vocab.config;
    c.analyzer = f.get("analyzer") == "word" ? Analyzer::kWordToken : Analyzer::kChar;
    c.range.min_n = static_cast<int>(detail::parse_uint(f.get("min_n")));
    c.range.max_n = static_cast<int>(detail::parse_uint(f.get("max_n")));
    if (f.get("max_features") != "none") c.max_features = detail::parse_uint(f.get("max_features"));
    c.min_df = detail::parse_uint(f.get("min_df"));
    c.weighting = f.get("weighting") == "count" ? Weighting::kCount : Weighting::kTfIdf;
    vocab.corpus_size = detail::parse_uint(f.get("corpus_size"));
    const auto terms = detail::parse_uint(f.get("terms"));
    try {
      c.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::kCorruptModelFile, e.what());
    }
    for (std::uint64_t i = 0; i < terms; ++i) {
      const auto line = in.next();
      const auto t1 = line.find('\t');
      const auto t2 = line.find('\t', t1 + 1);
      const auto t3 = line.find('\t', t2 + 1);
      if (t1 == std::string_view::npos || t2 == std::string_view::npos ||
          t3 == std::string_view::npos) {
        throw Error(ErrorCode::kCorruptModelFile, "bad vocabulary line");
      }
      if (detail::parse_uint(line.substr(t1 + 1, t2 - t1 - 1)) != i) {
        throw Error(ErrorCode::kCorruptModelFile, "vocabulary indices out of order");
      }
      vocab.terms.push_back(detail::unescape_term(line.substr(0, t1)));
      vocab.document_frequency.push_back(
          static_cast<std::uint32_t>(detail::parse_uint(line.substr(t2 + 1, t3 - t2 - 1))));
      const auto idf = line.substr(t3 + 1);
      if (c.weighting == Weighting::kTfIdf) vocab.idf.push_back(detail::parse_hex_double(idf));
    }
    model.features.blocks.push_back(std::move(vocab));
  }

  const auto dimension = detail::parse_uint(in.value_after("weights"));
  if (!model.features.blocks.empty() && dimension != model.features.dimension()) {
    throw Error(ErrorCode::kCorruptModelFile, "weight dimension disagrees with vocabulary");
  }
  model.bias = detail::parse_hex_double(in.value_after("bias"));
  model.weights.assign(dimension, 0.0);
  while (!in.at_end()) {
    const auto line = in.next();
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorCode::kCorruptModelFile, "bad weight");
    const auto j = detail::parse_uint(line.substr(0, colon));
    if (j >= dimension) throw Error(ErrorCode::kCorruptModelFile, "weight index out of range");
    model.weights[j] = detail::parse_hex_double(line.substr(colon + 1));
  }
  return model;
}

inline void save_model(const LinearModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << serialize_model(model);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

inline LinearModel load_model(const std::filesystem::path& path) {
  return deserialize_model(detail::read_file(path));
}

}  // namespace spreader

#endif  // SPREADER_MODEL_IO_HPP_
