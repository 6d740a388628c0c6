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

// spreader: command-line front end for the fake-news-spreader profiler.
//
//   spreader analyze    --input DIR --lang en|es
//   spreader train      --input DIR --lang en|es --out MODEL [--seed N] [--fraction 7/10] [--full]
//   spreader evaluate   --model MODEL --input DIR [--heldout --seed N --fraction 7/10]
//   spreader predict    --model MODEL --input DIR [--out FILE]
//   spreader gridsearch --input DIR --lang en|es [--out TSV] [--json FILE] [--folds K]
//
// Exit status: 0 success, 1 usage error, 2 data error, 3 model error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spreader/spreader.hpp"

namespace {

using namespace spreader;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kModel = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kEmptyGrid:
      return kUsage;
    case ErrorCode::kUnsupportedVersion:
    case ErrorCode::kCorruptModelFile:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kWrongModelKind:
      return kModel;
    default:
      return kData;
  }
}

struct RunConfig {
  std::string input_dir;
  std::string lang;
  std::string model_path;
  std::string out;
  std::string json_out;
  std::uint64_t seed = 42;
  std::string fraction = "7/10";
  bool full = false;
  bool heldout = false;
  std::size_t folds = 0;
  int positive_class = 1;
  std::string model_kind;
  std::string features;
  double c = 1.0;
  double tolerance = 1e-4;
  int max_iterations = 1000;
};

Language require_language(const std::string& text) {
  const auto lang = parse_language(text);
  if (!lang) throw UsageError("--lang must be en or es");
  return *lang;
}

SplitSpec split_spec(const RunConfig& rc) {
  SplitSpec spec;
  spec.seed = rc.seed;
  const auto slash = rc.fraction.find('/');
  try {
    if (slash == std::string::npos) {
      // Decimal fraction such as 0.7.
      const double f = std::stod(rc.fraction);
      spec.numerator = static_cast<std::uint64_t>(f * 1'000'000 + 0.5);
      spec.denominator = 1'000'000;
    } else {
      spec.numerator = std::stoull(rc.fraction.substr(0, slash));
      spec.denominator = std::stoull(rc.fraction.substr(slash + 1));
    }
  } catch (const std::exception&) {
    throw UsageError("--fraction must look like 7/10 or 0.7");
  }
  if (spec.numerator == 0 || spec.numerator >= spec.denominator) {
    throw UsageError("--fraction must lie strictly between 0 and 1");
  }
  return spec;
}

/// Parses one block of the report notation, e.g. "tfidf-char[1;3]-max3000-mindf1".
VectorizerConfig parse_block(const std::string& text) {
  VectorizerConfig c;
  std::istringstream in(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(in, part, '-')) parts.push_back(part);
  if (parts.size() != 4) throw UsageError("bad feature block '" + text + "'");
  if (parts[0] == "tfidf") c.weighting = Weighting::kTfIdf;
  else if (parts[0] == "count") c.weighting = Weighting::kCount;
  else throw UsageError("weighting must be tfidf or count in '" + text + "'");
  int lo = 0;
  int hi = 0;
  char analyzer[8] = {};
  if (std::sscanf(parts[1].c_str(), "%4[a-z][%d;%d]", analyzer, &lo, &hi) != 3) {
    throw UsageError("bad analyzer/range in '" + text + "'");
  }
  if (std::string(analyzer) == "char") c.analyzer = Analyzer::kChar;
  else if (std::string(analyzer) == "word") c.analyzer = Analyzer::kWordToken;
  else throw UsageError("analyzer must be char or word in '" + text + "'");
  c.range = {lo, hi};
  if (parts[2] == "maxall") {
    c.max_features.reset();
  } else if (parts[2].rfind("max", 0) == 0) {
    c.max_features = std::stoull(parts[2].substr(3));
  } else {
    throw UsageError("bad max_features in '" + text + "'");
  }
  if (parts[3].rfind("mindf", 0) != 0) throw UsageError("bad min_df in '" + text + "'");
  c.min_df = std::stoull(parts[3].substr(5));
  c.validate();
  return c;
}

PipelineConfig pipeline_config(const RunConfig& rc, Language language) {
  PipelineConfig p = final_system(language);
  if (!rc.model_kind.empty()) {
    if (rc.model_kind == "svm") p.model = ModelKind::kSvm;
    else if (rc.model_kind == "logreg") p.model = ModelKind::kLogReg;
    else throw UsageError("--model-kind must be svm or logreg");
  }
  if (!rc.features.empty()) {
    p.blocks.clear();
    std::istringstream in(rc.features);
    std::string block;
    while (std::getline(in, block, '+')) p.blocks.push_back(parse_block(block));
  }
  p.train.c = rc.c;
  p.train.tolerance = rc.tolerance;
  p.train.max_iterations = rc.max_iterations;
  return p;
}

Label positive_class(const RunConfig& rc) {
  if (rc.positive_class != 0 && rc.positive_class != 1) {
    throw UsageError("--positive-class must be 0 or 1");
  }
  return rc.positive_class == 1 ? Label::kFakeNewsSpreader : Label::kTrueNewsSpreader;
}

void warn_all(const Diagnostics& diagnostics) {
  for (const auto& w : diagnostics.warnings) std::cerr << "warning: " << w << "\n";
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
}

std::string model_label(ModelKind kind) {
  return kind == ModelKind::kSvm ? "SVM" : "LogisticRegression";
}

int run_analyze(const RunConfig& rc) {
  const Corpus corpus = load_corpus(rc.input_dir, require_language(rc.lang));
  warn_all(corpus.diagnostics());
  emit(rc.out, format_stats_table(corpus_stats(corpus), corpus.language()));
  return kOk;
}

int run_train(const RunConfig& rc) {
  if (rc.out.empty()) throw UsageError("train needs --out MODEL");
  const Language language = require_language(rc.lang);
  const Corpus corpus = load_corpus(rc.input_dir, language);
  warn_all(corpus.diagnostics());
  const PipelineConfig config = pipeline_config(rc, language);
  const Label positive = positive_class(rc);

  std::optional<Corpus> heldout;
  Corpus train_set = corpus;
  if (!rc.full) {
    auto [train, test] = split_corpus(corpus, split_spec(rc));
    train_set = std::move(train);
    heldout = std::move(test);
  }
  TrainResult result = fit_pipeline(train_set, config);
  if (!result.converged) std::cerr << "warning: " << result.warning << "\n";
  save_model(result.model, rc.out);

  std::string report = "model: " + rc.out + "\n";
  report += "optimizer: iterations=" + std::to_string(result.iterations) +
            " converged=" + (result.converged ? "yes" : "no") + "\n\n";
  report += "[train split: " + std::to_string(train_set.size()) + " authors]\n";
  report += format_eval_report(evaluate_model(result.model, train_set, positive),
                               model_label(config.model), config.describe(), language);
  if (heldout) {
    report += "\n[held-out split: " + std::to_string(heldout->size()) + " authors]\n";
    report += format_eval_report(evaluate_model(result.model, *heldout, positive),
                                 model_label(config.model), config.describe(), language);
  }
  std::cout << report;
  return kOk;
}

int run_evaluate(const RunConfig& rc) {
  if (rc.model_path.empty()) throw UsageError("evaluate needs --model MODEL");
  const LinearModel model = load_model(rc.model_path);
  Corpus corpus = load_corpus(rc.input_dir, model.language);
  warn_all(corpus.diagnostics());
  if (rc.heldout) corpus = split_corpus(corpus, split_spec(rc)).second;
  PipelineConfig described;
  for (const auto& b : model.features.blocks) described.blocks.push_back(b.config);
  const EvalReport report = evaluate_model(model, corpus, positive_class(rc));
  std::string text = format_eval_report(report, model_label(model.kind), described.describe(),
                                        model.language);
  text += "\nauthor_id\tpredicted\tactual\n";
  for (const auto& p : report.predictions) {
    text += p.author_id + "\t" + std::to_string(label_value(p.predicted)) + "\t" +
            std::to_string(label_value(p.actual)) + "\n";
  }
  emit(rc.out, text);
  return kOk;
}

int run_predict(const RunConfig& rc) {
  if (rc.model_path.empty()) throw UsageError("predict needs --model MODEL");
  const LinearModel model = load_model(rc.model_path);
  const Corpus corpus = load_corpus(rc.input_dir, model.language);
  warn_all(corpus.diagnostics());
  const auto& stopwords = StopwordList::for_language(model.language);
  PredictionDiagnostics diag;
  std::string out;
  for (const auto& author : corpus.authors()) {
    const auto x = model.features.vectorize(preprocess_author(author, stopwords));
    out += format_truth_line(author.author_id, predict(model, x, &diag));
  }
  if (diag.ties > 0) std::cerr << "note: " << diag.ties << " decision ties\n";
  emit(rc.out, out);
  return kOk;
}

int run_gridsearch(const RunConfig& rc) {
  const Language language = require_language(rc.lang);
  const Corpus corpus = load_corpus(rc.input_dir, language);
  warn_all(corpus.diagnostics());
  auto grid = default_grid(language);
  for (auto& p : grid) {
    p.train.c = rc.c;
    p.train.tolerance = rc.tolerance;
    p.train.max_iterations = rc.max_iterations;
  }
  GridOptions options;
  options.folds = rc.folds;
  options.positive_class = positive_class(rc);
  const auto results = grid_search(corpus, grid, split_spec(rc), options);
  emit(rc.out, grid_results_tsv(results));
  if (!rc.json_out.empty()) emit(rc.json_out, grid_results_json(results).dump(2) + "\n");
  return kOk;
}

/// Reads `key=value` lines (blank lines and `#` comments skipped) and turns
/// each into `--key=value` unless that flag was already given.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!given) args.push_back(flag + "=" + value);
  }
  return args;
}

int run(int argc, char** argv) {
  RunConfig rc;
  CLI::App app{"Fake news spreader profiling with character n-grams"};
  app.require_subcommand(1);
  std::string config_path;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value file supplying flag values");
    sub->add_option("--input", rc.input_dir, "PAN-format corpus directory")->required();
    sub->add_option("--out", rc.out, "output path (stdout if omitted)");
    sub->add_option("--positive-class", rc.positive_class, "class reported as positive (0 or 1)");
  };
  const auto split_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", rc.seed, "split seed");
    sub->add_option("--fraction", rc.fraction, "train fraction, e.g. 7/10");
  };
  const auto train_flags = [&](CLI::App* sub) {
    sub->add_option("--C", rc.c, "regularization strength");
    sub->add_option("--tolerance", rc.tolerance, "optimizer gradient-norm tolerance");
    sub->add_option("--max-iterations", rc.max_iterations, "optimizer iteration cap");
  };

  auto* analyze = app.add_subcommand("analyze", "per-class corpus statistics");
  common(analyze);
  analyze->add_option("--lang", rc.lang, "en or es")->required();

  auto* train = app.add_subcommand("train", "train the final configuration and save a model");
  common(train);
  split_flags(train);
  train_flags(train);
  train->add_option("--lang", rc.lang, "en or es")->required();
  train->add_flag("--full", rc.full, "train on the whole corpus instead of the 70% split");
  train->add_option("--model-kind", rc.model_kind, "svm or logreg (default: language final system)");
  train->add_option("--features", rc.features,
                    "feature blocks, e.g. tfidf-char[1;3]-max3000-mindf1+count-char[3;7]-max50000-mindf1");

  auto* evaluate = app.add_subcommand("evaluate", "evaluate a saved model on a labeled corpus");
  common(evaluate);
  split_flags(evaluate);
  evaluate->add_option("--model", rc.model_path, "model file")->required();
  evaluate->add_flag("--heldout", rc.heldout, "evaluate only the held-out side of the split");

  auto* predict_cmd = app.add_subcommand("predict", "label an unlabeled corpus");
  common(predict_cmd);
  predict_cmd->add_option("--model", rc.model_path, "model file")->required();

  auto* grid = app.add_subcommand("gridsearch", "rank the hyperparameter grid");
  common(grid);
  split_flags(grid);
  train_flags(grid);
  grid->add_option("--lang", rc.lang, "en or es")->required();
  grid->add_option("--folds", rc.folds, "stratified k-fold instead of a single split");
  grid->add_option("--json", rc.json_out, "also write structured results here");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*analyze) return run_analyze(rc);
    if (*train) return run_train(rc);
    if (*evaluate) return run_evaluate(rc);
    if (*predict_cmd) return run_predict(rc);
    if (*grid) return run_gridsearch(rc);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
