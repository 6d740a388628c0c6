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

#ifndef SPREADER_EVALUATION_HPP_
#define SPREADER_EVALUATION_HPP_

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "spreader/corpus.hpp"
#include "spreader/error.hpp"
#include "spreader/models.hpp"
#include "spreader/preprocess.hpp"
#include "spreader/vectorize.hpp"

namespace spreader {

// ---------------------------------------------------------------------------
// Confusion matrix and metrics

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  Label positive_class = Label::kFakeNewsSpreader;

  std::size_t total() const { return tp + tn + fp + fn; }

  /// Same counts seen from the other class.
  ConfusionMatrix flipped() const { return {tn, tp, fn, fp, other_label(positive_class)}; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

inline ConfusionMatrix confusion(std::span<const Label> predicted, std::span<const Label> actual,
                                 Label positive_class = Label::kFakeNewsSpreader) {
  if (predicted.size() != actual.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(predicted.size()) + " predictions vs " +
                                                std::to_string(actual.size()) + " labels");
  }
  if (predicted.empty()) throw Error(ErrorCode::kEmptyMatrix, "nothing to count");
  ConfusionMatrix cm;
  cm.positive_class = positive_class;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool pred_pos = predicted[i] == positive_class;
    const bool true_pos = actual[i] == positive_class;
    if (pred_pos && true_pos) ++cm.tp;
    else if (!pred_pos && !true_pos) ++cm.tn;
    else if (pred_pos) ++cm.fp;
    else ++cm.fn;
  }
  return cm;
}

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  /// Set when a ratio had a zero denominator and was reported as 0.
  bool degenerate = false;
};

inline Metrics metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error(ErrorCode::kEmptyMatrix, "confusion matrix is empty");
  Metrics m;
  const auto ratio = [&m](std::size_t num, std::size_t den) {
    if (den == 0) {
      m.degenerate = true;
      return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
  };
  m.precision = ratio(cm.tp, cm.tp + cm.fp);
  m.recall = ratio(cm.tp, cm.tp + cm.fn);
  if (m.precision + m.recall > 0.0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.degenerate = true;
  }
  m.accuracy = ratio(cm.tp + cm.tn, cm.total());
  return m;
}

struct AuthorPrediction {
  std::string author_id;
  Label predicted;
  Label actual;
};

struct EvalReport {
  ConfusionMatrix confusion;
  Metrics metrics;
  std::vector<AuthorPrediction> predictions;
  std::size_t ties = 0;
};

inline EvalReport make_report(std::vector<AuthorPrediction> predictions, Label positive_class) {
  std::vector<Label> pred;
  std::vector<Label> truth;
  for (const auto& p : predictions) {
    pred.push_back(p.predicted);
    truth.push_back(p.actual);
  }
  EvalReport report;
  report.confusion = confusion(pred, truth, positive_class);
  report.metrics = metrics(report.confusion);
  report.predictions = std::move(predictions);
  return report;
}

// ---------------------------------------------------------------------------
// Pipelines

struct PipelineConfig {
  /// One block, or several whose vectors are unioned in order.
  std::vector<VectorizerConfig> blocks;
  ModelKind model = ModelKind::kSvm;
  TrainConfig train;

  std::string describe() const {
    std::string s;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (i > 0) s += "+";
      s += blocks[i].describe();
    }
    return s;
  }

  std::string key() const { return std::string(model_kind_name(model)) + "/" + describe(); }

  TrainConfig effective_train_config() const {
    TrainConfig c = train;
    c.loss = model == ModelKind::kSvm ? Loss::kSquaredHinge : Loss::kLogistic;
    return c;
  }
};

/// The two submitted systems: a linear SVM over TF-IDF character 1-3 grams
/// capped at 3,000 features (EN), and logistic regression over the union of
/// TF-IDF character 1-3 grams (5,000) and character 3-7 gram counts (50,000)
/// (ES).
inline PipelineConfig final_system(Language language) {
  PipelineConfig p;
  if (language == Language::kEn) {
    p.model = ModelKind::kSvm;
    p.blocks = {{Analyzer::kChar, {1, 3}, 3000, 1, Weighting::kTfIdf}};
  } else {
    p.model = ModelKind::kLogReg;
    p.blocks = {{Analyzer::kChar, {1, 3}, 5000, 1, Weighting::kTfIdf},
                {Analyzer::kChar, {3, 7}, 50000, 1, Weighting::kCount}};
  }
  return p;
}

/// Hyperparameter grid: n-gram ranges [1;3], [2;7], [3;7]; min_df 1-3;
/// max_features between 1,000 and 50,000; TF-IDF and count weighting; both
/// classifiers. The language's final system is included.
inline std::vector<PipelineConfig> default_grid(Language language) {
  std::vector<PipelineConfig> grid;
  for (NgramRange range : {NgramRange{1, 3}, NgramRange{2, 7}, NgramRange{3, 7}}) {
    for (std::size_t min_df : {1, 2, 3}) {
      for (std::size_t max_features : {1000, 3000, 5000, 10000, 50000}) {
        for (Weighting w : {Weighting::kTfIdf, Weighting::kCount}) {
          for (ModelKind kind : {ModelKind::kSvm, ModelKind::kLogReg}) {
            PipelineConfig p;
            p.model = kind;
            p.blocks = {{Analyzer::kChar, range, max_features, min_df, w}};
            grid.push_back(p);
          }
        }
      }
    }
  }
  const PipelineConfig final_cfg = final_system(language);
  const bool present = std::any_of(grid.begin(), grid.end(), [&](const PipelineConfig& p) {
    return p.key() == final_cfg.key();
  });
  if (!present) grid.push_back(final_cfg);
  return grid;
}

namespace detail {

using ExtractionKey = std::pair<Analyzer, NgramRange>;

/// Per-split cache of n-gram counts keyed by analyzer and range.
class ExtractionCache {
 public:
  ExtractionCache(std::span<const TokenStream> train, std::span<const TokenStream> test)
      : train_(train), test_(test) {}

  const std::pair<std::vector<NgramCounts>, std::vector<NgramCounts>>& get(
      const VectorizerConfig& config) {
    const ExtractionKey key{config.analyzer, config.range};
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      std::pair<std::vector<NgramCounts>, std::vector<NgramCounts>> entry;
      for (const auto& s : train_) entry.first.push_back(extract_ngrams(s, config));
      for (const auto& s : test_) entry.second.push_back(extract_ngrams(s, config));
      it = cache_.emplace(key, std::move(entry)).first;
    }
    return it->second;
  }

  /// Drops every entry the given pipeline does not use.
  void retain_only(const PipelineConfig& config) {
    for (auto it = cache_.begin(); it != cache_.end();) {
      const bool used = std::any_of(config.blocks.begin(), config.blocks.end(),
                                    [&](const VectorizerConfig& b) {
                                      return ExtractionKey{b.analyzer, b.range} == it->first;
                                    });
      it = used ? std::next(it) : cache_.erase(it);
    }
  }

 private:
  std::span<const TokenStream> train_;
  std::span<const TokenStream> test_;
  std::map<ExtractionKey, std::pair<std::vector<NgramCounts>, std::vector<NgramCounts>>> cache_;
};

inline std::vector<SparseVector> union_rows(const std::vector<std::vector<SparseVector>>& blocks,
                                            std::size_t rows) {
  std::vector<SparseVector> out(rows);
  for (const auto& block : blocks) {
    for (std::size_t i = 0; i < rows; ++i) out[i] = feature_union(out[i], block[i]);
  }
  return out;
}

struct SplitOutcome {
  TrainResult training;
  EvalReport report;
};

inline SplitOutcome run_split(const Corpus& train, const Corpus& test,
                              const PipelineConfig& config, Label positive_class,
                              ExtractionCache& cache) {
  if (config.blocks.empty()) throw Error(ErrorCode::kInvalidConfig, "pipeline has no features");
  FeatureSpec features;
  std::vector<std::vector<SparseVector>> train_blocks;
  std::vector<std::vector<SparseVector>> test_blocks;
  for (const auto& block : config.blocks) {
    const auto& [train_counts, test_counts] = cache.get(block);
    Vocabulary vocab = fit_vocabulary_from_counts(train_counts, block);
    std::vector<SparseVector> tr;
    std::vector<SparseVector> te;
    for (const auto& c : train_counts) tr.push_back(transform_counts(c, vocab));
    for (const auto& c : test_counts) te.push_back(transform_counts(c, vocab));
    train_blocks.push_back(std::move(tr));
    test_blocks.push_back(std::move(te));
    features.blocks.push_back(std::move(vocab));
  }
  const auto x_train = union_rows(train_blocks, train.size());
  const auto x_test = union_rows(test_blocks, test.size());
  const auto y_train = train.labels();

  SplitOutcome out;
  out.training = spreader::train(x_train, y_train, config.effective_train_config());
  out.training.model.features = std::move(features);
  out.training.model.language = train.language();

  std::vector<AuthorPrediction> predictions;
  PredictionDiagnostics diag;
  for (std::size_t i = 0; i < test.size(); ++i) {
    const auto& author = test.authors()[i];
    predictions.push_back(
        {author.author_id, predict(out.training.model, x_test[i], &diag), author.label.value()});
  }
  out.report = make_report(std::move(predictions), positive_class);
  out.report.ties = diag.ties;
  return out;
}

}  // namespace detail

/// Fits the vectorizers and classifier on `train` only.
inline TrainResult fit_pipeline(const Corpus& train, const PipelineConfig& config,
                                const PreprocessOptions& options = {}) {
  const auto streams = preprocess_corpus(train, options);
  FeatureSpec features = fit_features(streams, config.blocks);
  std::vector<SparseVector> rows;
  rows.reserve(streams.size());
  for (const auto& s : streams) rows.push_back(features.vectorize(s));
  TrainResult result = spreader::train(rows, train.labels(), config.effective_train_config());
  result.model.features = std::move(features);
  result.model.language = train.language();
  return result;
}

/// Predicts every author of a labeled corpus with a fitted model.
inline EvalReport evaluate_model(const LinearModel& model, const Corpus& corpus,
                                 Label positive_class = Label::kFakeNewsSpreader,
                                 const PreprocessOptions& options = {}) {
  if (!corpus.labeled()) throw Error(ErrorCode::kUnlabeledCorpus, "evaluation needs labels");
  const auto& stopwords = StopwordList::for_language(model.language);
  std::vector<AuthorPrediction> predictions;
  PredictionDiagnostics diag;
  for (const auto& author : corpus.authors()) {
    const auto x = model.features.vectorize(preprocess_author(author, stopwords, options));
    predictions.push_back({author.author_id, predict(model, x, &diag), author.label.value()});
  }
  EvalReport report = make_report(std::move(predictions), positive_class);
  report.ties = diag.ties;
  return report;
}

inline EvalReport evaluate_pipeline(const Corpus& train, const Corpus& test,
                                    const PipelineConfig& config,
                                    Label positive_class = Label::kFakeNewsSpreader,
                                    const PreprocessOptions& options = {}) {
  if (!train.labeled() || !test.labeled()) {
    throw Error(ErrorCode::kUnlabeledCorpus, "train and test corpora must be labeled");
  }
  const auto train_streams = preprocess_corpus(train, options);
  const auto test_streams = preprocess_corpus(test, options);
  detail::ExtractionCache cache(train_streams, test_streams);
  return detail::run_split(train, test, config, positive_class, cache).report;
}

// ---------------------------------------------------------------------------
// Grid search

struct GridResult {
  PipelineConfig config;
  double mean_accuracy = 0.0;
  std::vector<EvalReport> reports;
};

struct GridOptions {
  /// 0 or 1: the single seeded split; k > 1: stratified k-fold.
  std::size_t folds = 0;
  Label positive_class = Label::kFakeNewsSpreader;
  PreprocessOptions preprocess;
};

/// Evaluates every configuration and ranks them by mean accuracy
/// (descending), ties broken by the configuration key.
inline std::vector<GridResult> grid_search(const Corpus& corpus,
                                           std::span<const PipelineConfig> grid,
                                           const SplitSpec& spec, const GridOptions& options = {}) {
  if (grid.empty()) throw Error(ErrorCode::kEmptyGrid, "grid has no configurations");
  std::vector<std::pair<Corpus, Corpus>> splits;
  if (options.folds > 1) {
    splits = kfold_corpus(corpus, options.folds, spec.seed);
  } else {
    splits.push_back(split_corpus(corpus, spec));
  }

  // Visit configs grouped by their extraction keys so each n-gram range is
  // extracted once per split.
  std::vector<std::size_t> order(grid.size());
  std::iota(order.begin(), order.end(), 0);
  const auto keys_of = [&](std::size_t i) {
    std::vector<detail::ExtractionKey> keys;
    for (const auto& b : grid[i].blocks) keys.emplace_back(b.analyzer, b.range);
    return keys;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys_of(a) < keys_of(b); });

  std::vector<GridResult> results(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) results[i].config = grid[i];
  for (const auto& [train, test] : splits) {
    const auto train_streams = preprocess_corpus(train, options.preprocess);
    const auto test_streams = preprocess_corpus(test, options.preprocess);
    detail::ExtractionCache cache(train_streams, test_streams);
    for (std::size_t i : order) {
      cache.retain_only(grid[i]);
      results[i].reports.push_back(
          detail::run_split(train, test, grid[i], options.positive_class, cache).report);
    }
  }
  for (auto& r : results) {
    double sum = 0.0;
    for (const auto& rep : r.reports) sum += rep.metrics.accuracy;
    r.mean_accuracy = sum / static_cast<double>(r.reports.size());
  }
  std::stable_sort(results.begin(), results.end(), [](const GridResult& a, const GridResult& b) {
    if (a.mean_accuracy != b.mean_accuracy) return a.mean_accuracy > b.mean_accuracy;
    return a.config.key() < b.config.key();
  });
  return results;
}

// ---------------------------------------------------------------------------
// Report rendering

namespace detail {

inline std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string class_name(Label label) {
  return label == Label::kFakeNewsSpreader ? "1 (fake news spreader)"
                                           : "0 (true news spreader)";
}

}  // namespace detail

/// Evaluation block, one row per model:
/// model, features, language, TP/TN/FP/FN, P, R, F1, accuracy.
inline std::string format_eval_report(const EvalReport& report, std::string_view model_name,
                                      std::string_view features, Language language) {
  const auto& cm = report.confusion;
  const auto& m = report.metrics;
  std::string lang(language_code(language));
  for (auto& c : lang) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  std::string out;
  out += "positive class: " + detail::class_name(cm.positive_class) + "\n";
  out += "Model\tFeatures\tLanguage\tTP\tTN\tFP\tFN\tP\tR\tF1\tAcc.\n";
  out += std::string(model_name) + "\t" + std::string(features) + "\t" + lang + "\t" +
         std::to_string(cm.tp) + "\t" + std::to_string(cm.tn) + "\t" + std::to_string(cm.fp) +
         "\t" + std::to_string(cm.fn) + "\t" + detail::fixed(m.precision, 4) + "\t" +
         detail::fixed(m.recall, 4) + "\t" + detail::fixed(m.f1, 4) + "\t" +
         detail::fixed(m.accuracy, 4) + "\n";
  out += "authors: " + std::to_string(cm.total());
  if (m.degenerate) out += " (degenerate metric: a zero denominator was reported as 0)";
  if (report.ties > 0) out += " ties: " + std::to_string(report.ties);
  out += "\n";
  return out;
}

inline std::string grid_results_tsv(std::span<const GridResult> results) {
  std::string out = "rank\tmodel\tfeatures\tmean_accuracy\tprecision\trecall\tf1\ttp\ttn\tfp\tfn\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    ConfusionMatrix total;
    total.positive_class = r.reports.front().confusion.positive_class;
    for (const auto& rep : r.reports) {
      total.tp += rep.confusion.tp;
      total.tn += rep.confusion.tn;
      total.fp += rep.confusion.fp;
      total.fn += rep.confusion.fn;
    }
    const Metrics pooled = metrics(total);
    out += std::to_string(i + 1) + "\t" + std::string(model_kind_name(r.config.model)) + "\t" +
           r.config.describe() + "\t" + detail::fixed(r.mean_accuracy, 4) + "\t" +
           detail::fixed(pooled.precision, 4) + "\t" + detail::fixed(pooled.recall, 4) + "\t" +
           detail::fixed(pooled.f1, 4) + "\t" + std::to_string(total.tp) + "\t" +
           std::to_string(total.tn) + "\t" + std::to_string(total.fp) + "\t" +
           std::to_string(total.fn) + "\n";
  }
  return out;
}

inline nlohmann::json to_json(const VectorizerConfig& c) {
  nlohmann::json j;
  j["analyzer"] = c.analyzer == Analyzer::kChar ? "char" : "word";
  j["ngram_range"] = {c.range.min_n, c.range.max_n};
  j["max_features"] = c.max_features ? nlohmann::json(*c.max_features) : nlohmann::json(nullptr);
  j["min_df"] = c.min_df;
  j["weighting"] = c.weighting == Weighting::kTfIdf ? "tfidf" : "count";
  return j;
}

inline nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json j;
  j["positive_class"] = label_value(r.confusion.positive_class);
  j["tp"] = r.confusion.tp;
  j["tn"] = r.confusion.tn;
  j["fp"] = r.confusion.fp;
  j["fn"] = r.confusion.fn;
  j["precision"] = r.metrics.precision;
  j["recall"] = r.metrics.recall;
  j["f1"] = r.metrics.f1;
  j["accuracy"] = r.metrics.accuracy;
  j["degenerate"] = r.metrics.degenerate;
  return j;
}

/// Structured form of the grid results: {"results": [{rank, model, blocks,
/// C, mean_accuracy, reports: [...]}, ...]}.
inline nlohmann::json grid_results_json(std::span<const GridResult> results) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    nlohmann::json row;
    row["rank"] = i + 1;
    row["model"] = model_kind_name(r.config.model);
    row["features"] = r.config.describe();
    row["blocks"] = nlohmann::json::array();
    for (const auto& b : r.config.blocks) row["blocks"].push_back(to_json(b));
    row["C"] = r.config.train.c;
    row["mean_accuracy"] = r.mean_accuracy;
    row["reports"] = nlohmann::json::array();
    for (const auto& rep : r.reports) row["reports"].push_back(to_json(rep));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"results", rows}};
}

}  // namespace spreader

#endif  // SPREADER_EVALUATION_HPP_
