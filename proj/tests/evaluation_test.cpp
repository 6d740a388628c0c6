#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spreader/evaluation.hpp"
#include "test_support.hpp"

namespace spreader {
namespace {

constexpr Label kFake = Label::kFakeNewsSpreader;
constexpr Label kTrue = Label::kTrueNewsSpreader;

TEST(Metrics, EnglishTableRow) {
  const ConfusionMatrix cm{35, 35, 10, 10, kFake};
  const auto m = metrics(cm);
  const auto want = oracle::hand_metrics(35, 35, 10, 10);
  EXPECT_NEAR(m.precision, want.p, 1e-12);
  EXPECT_NEAR(m.recall, want.r, 1e-12);
  EXPECT_NEAR(m.f1, want.f1, 1e-12);
  EXPECT_NEAR(m.accuracy, 70.0 / 90.0, 1e-12);
  EXPECT_NEAR(m.accuracy, 0.78, 0.005);
  EXPECT_NEAR(m.f1, 0.78, 0.005);
  EXPECT_FALSE(m.degenerate);
}

TEST(Metrics, SpanishTableRowBothOrientations) {
  const ConfusionMatrix cm{42, 36, 9, 3, kFake};
  const auto fake_pos = metrics(cm);
  EXPECT_NEAR(fake_pos.precision, 42.0 / 51.0, 1e-12);
  EXPECT_NEAR(fake_pos.precision, 0.8235, 5e-5);
  EXPECT_NEAR(fake_pos.recall, 0.9333, 5e-5);
  EXPECT_NEAR(fake_pos.accuracy, 0.8667, 5e-5);

  const auto true_pos = metrics(cm.flipped());
  const auto want = oracle::hand_metrics(36, 42, 3, 9);
  EXPECT_EQ(cm.flipped().positive_class, kTrue);
  EXPECT_NEAR(true_pos.precision, want.p, 1e-12);
  EXPECT_NEAR(true_pos.precision, 0.92, 0.005);
  EXPECT_NEAR(true_pos.recall, 0.80, 0.005);
  EXPECT_NEAR(true_pos.f1, 0.8571, 5e-5);
  EXPECT_NEAR(true_pos.accuracy, 0.87, 0.005);
}

TEST(Metrics, DegenerateCases) {
  const auto none_predicted = metrics({0, 5, 0, 3, kFake});
  EXPECT_EQ(none_predicted.precision, 0.0);
  EXPECT_EQ(none_predicted.recall, 0.0);
  EXPECT_EQ(none_predicted.f1, 0.0);
  EXPECT_TRUE(none_predicted.degenerate);
  EXPECT_NEAR(none_predicted.accuracy, 5.0 / 8.0, 1e-12);
  try {
    metrics({0, 0, 0, 0, kFake});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyMatrix);
  }
}

TEST(Confusion, CountsAndErrors) {
  const std::vector<Label> pred = {kFake, kFake, kTrue, kTrue, kFake};
  const std::vector<Label> truth = {kFake, kTrue, kTrue, kFake, kFake};
  const auto cm = confusion(pred, truth);
  EXPECT_EQ(cm.tp, 2u);
  EXPECT_EQ(cm.tn, 1u);
  EXPECT_EQ(cm.fp, 1u);
  EXPECT_EQ(cm.fn, 1u);
  const auto swapped = confusion(pred, truth, kTrue);
  EXPECT_EQ(swapped.tp, cm.tn);
  EXPECT_EQ(swapped.tn, cm.tp);
  EXPECT_EQ(swapped.fp, cm.fn);
  EXPECT_EQ(swapped.fn, cm.fp);
  const auto perfect = confusion(truth, truth);
  EXPECT_EQ(perfect.fp + perfect.fn, 0u);
  const std::vector<Label> short_pred = {kFake};
  EXPECT_THROW(confusion(short_pred, truth), Error);
}

TEST(EvaluatePipeline, SeparableCorpusIsPerfect) {
  const auto corpus = testing::toy_corpus(20, 1);
  const auto [train, test] = split_corpus(corpus, {});
  for (const auto& config : {final_system(Language::kEn), final_system(Language::kEs)}) {
    const auto report = evaluate_pipeline(train, test, config);
    EXPECT_EQ(report.metrics.accuracy, 1.0) << config.key();
    EXPECT_EQ(report.predictions.size(), test.size());
    EXPECT_EQ(evaluate_pipeline(train, train, config).metrics.accuracy, 1.0);
  }
}

TEST(EvaluatePipeline, ReportAggregatesMatchPredictions) {
  const auto corpus = testing::toy_corpus(15, 2, true);
  const auto [train, test] = split_corpus(corpus, {});
  const auto report = evaluate_pipeline(train, test, final_system(Language::kEn));
  std::vector<Label> pred;
  std::vector<Label> truth;
  for (const auto& p : report.predictions) {
    pred.push_back(p.predicted);
    truth.push_back(p.actual);
  }
  const auto cm = confusion(pred, truth);
  EXPECT_EQ(cm.tp, report.confusion.tp);
  EXPECT_EQ(cm.tn, report.confusion.tn);
  EXPECT_EQ(cm.fp, report.confusion.fp);
  EXPECT_EQ(cm.fn, report.confusion.fn);
  const auto m = metrics(cm);
  EXPECT_EQ(m.accuracy, report.metrics.accuracy);
  EXPECT_EQ(m.f1, report.metrics.f1);
}

TEST(EvaluatePipeline, MatchesFitThenEvaluate) {
  const auto corpus = testing::toy_corpus(12, 3, true);
  const auto [train, test] = split_corpus(corpus, {});
  const auto config = final_system(Language::kEs);
  const auto model = fit_pipeline(train, config).model;
  const auto direct = evaluate_model(model, test);
  const auto piped = evaluate_pipeline(train, test, config);
  ASSERT_EQ(direct.predictions.size(), piped.predictions.size());
  for (std::size_t i = 0; i < direct.predictions.size(); ++i) {
    EXPECT_EQ(direct.predictions[i].author_id, piped.predictions[i].author_id);
    EXPECT_EQ(direct.predictions[i].predicted, piped.predictions[i].predicted);
  }
}

TEST(EvaluatePipeline, DeletingTestAuthorsChangesNothingElse) {
  const auto corpus = testing::toy_corpus(12, 4, true);
  const auto [train, test] = split_corpus(corpus, {});
  const auto config = final_system(Language::kEn);
  const auto full = evaluate_pipeline(train, test, config);
  for (std::size_t drop = 0; drop < test.size(); ++drop) {
    std::vector<AuthorDocument> kept;
    for (std::size_t i = 0; i < test.size(); ++i) {
      if (i != drop) kept.push_back(test.authors()[i]);
    }
    const Corpus smaller(test.language(), kept);
    if (smaller.count(kFake) == 0 && smaller.count(kTrue) == 0) continue;
    const auto report = evaluate_pipeline(train, smaller, config);
    std::size_t j = 0;
    for (std::size_t i = 0; i < full.predictions.size(); ++i) {
      if (i == drop) continue;
      EXPECT_EQ(report.predictions[j].predicted, full.predictions[i].predicted);
      ++j;
    }
  }
  EXPECT_EQ(fit_pipeline(train, config).model, fit_pipeline(train, config).model);
}

TEST(GridSearch, SingletonEqualsEvaluatePipeline) {
  const auto corpus = testing::toy_corpus(15, 5, true);
  const SplitSpec spec{7, 10, 9};
  const std::vector<PipelineConfig> grid = {final_system(Language::kEn)};
  const auto results = grid_search(corpus, grid, spec);
  ASSERT_EQ(results.size(), 1u);
  const auto [train, test] = split_corpus(corpus, spec);
  const auto report = evaluate_pipeline(train, test, grid[0]);
  EXPECT_EQ(results[0].mean_accuracy, report.metrics.accuracy);
  ASSERT_EQ(results[0].reports.size(), 1u);
  for (std::size_t i = 0; i < report.predictions.size(); ++i) {
    EXPECT_EQ(results[0].reports[0].predictions[i].predicted, report.predictions[i].predicted);
  }
}

TEST(GridSearch, FinalSystemsRankDeterministically) {
  const auto corpus = testing::toy_corpus(15, 6);
  const std::vector<PipelineConfig> grid = {final_system(Language::kEn),
                                            final_system(Language::kEs)};
  const auto a = grid_search(corpus, grid, {});
  const auto b = grid_search(corpus, std::vector<PipelineConfig>{grid[1], grid[0]}, {});
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].config.key(), b[i].config.key());
    EXPECT_EQ(a[i].mean_accuracy, b[i].mean_accuracy);
  }
  EXPECT_GE(a[0].mean_accuracy, a[1].mean_accuracy);
  EXPECT_EQ(grid_results_tsv(a), grid_results_tsv(b));
  EXPECT_EQ(grid_results_json(a).dump(), grid_results_json(b).dump());
}

TEST(GridSearch, KFoldGivesOneReportPerFold) {
  const auto corpus = testing::toy_corpus(10, 7);
  const std::vector<PipelineConfig> grid = {final_system(Language::kEn)};
  GridOptions options;
  options.folds = 5;
  const auto results = grid_search(corpus, grid, {}, options);
  ASSERT_EQ(results[0].reports.size(), 5u);
  std::size_t seen = 0;
  for (const auto& r : results[0].reports) seen += r.predictions.size();
  EXPECT_EQ(seen, corpus.size());
}

TEST(GridSearch, EmptyGridErrors) {
  const auto corpus = testing::toy_corpus(5, 8);
  try {
    grid_search(corpus, std::vector<PipelineConfig>{}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGrid);
  }
}

TEST(DefaultGrid, CoversRangesCapsAndModels) {
  const auto grid = default_grid(Language::kEn);
  for (NgramRange range : {NgramRange{1, 3}, NgramRange{2, 7}, NgramRange{3, 7}}) {
    for (std::size_t cap : {1000, 3000, 5000, 10000, 50000}) {
      for (ModelKind kind : {ModelKind::kSvm, ModelKind::kLogReg}) {
        const bool found = std::any_of(grid.begin(), grid.end(), [&](const PipelineConfig& p) {
          return p.model == kind && p.blocks.size() == 1 && p.blocks[0].range == range &&
                 p.blocks[0].max_features == cap;
        });
        EXPECT_TRUE(found) << range.min_n << ";" << range.max_n << " " << cap;
      }
    }
  }
  const auto es = default_grid(Language::kEs);
  EXPECT_EQ(es.size(), grid.size() + 1);
  EXPECT_EQ(es.back().key(), final_system(Language::kEs).key());
}

TEST(FinalSystem, Configurations) {
  const auto en = final_system(Language::kEn);
  EXPECT_EQ(en.key(), "svm/tfidf-char[1;3]-max3000-mindf1");
  const auto es = final_system(Language::kEs);
  EXPECT_EQ(es.key(), "logreg/tfidf-char[1;3]-max5000-mindf1+count-char[3;7]-max50000-mindf1");
  std::size_t cap = 0;
  for (const auto& b : es.blocks) cap += *b.max_features;
  EXPECT_LE(cap, 55000u);
}

TEST(FormatEvalReport, TableLayout) {
  EvalReport report;
  report.confusion = {35, 35, 10, 10, kFake};
  report.metrics = metrics(report.confusion);
  const auto text = format_eval_report(report, "SVM", "tfidf-char[1;3]-max3000-mindf1", Language::kEn);
  EXPECT_NE(text.find("Model\tFeatures\tLanguage\tTP\tTN\tFP\tFN\tP\tR\tF1\tAcc."), std::string::npos);
  EXPECT_NE(text.find("EN\t35\t35\t10\t10\t0.7778\t0.7778\t0.7778\t0.7778"), std::string::npos);
}

}  // namespace
}  // namespace spreader
