#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spreader/models.hpp"
#include "test_support.hpp"

namespace spreader {
namespace {

constexpr Label kFake = Label::kFakeNewsSpreader;
constexpr Label kTrue = Label::kTrueNewsSpreader;

SparseVector dense(std::vector<double> values) {
  SparseVector v;
  v.dimension = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) v.entries.emplace_back(static_cast<std::uint32_t>(i), values[i]);
  }
  return v;
}

struct Dataset {
  std::vector<SparseVector> rows;
  std::vector<Label> labels;
};

// Two gaussian blobs at +-center along the first axis.
Dataset blobs(std::mt19937_64& rng, std::size_t per_class, std::size_t dim, double center) {
  std::normal_distribution<double> noise(0.0, 0.3);
  Dataset d;
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const bool fake = i % 2 == 0;
    std::vector<double> x(dim);
    for (auto& v : x) v = noise(rng);
    x[0] += fake ? center : -center;
    d.rows.push_back(dense(x));
    d.labels.push_back(fake ? kFake : kTrue);
  }
  return d;
}

Dataset random_sparse(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Dataset d;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(dim);
    for (auto& v : x) v = testing::pick(rng, 3) == 0 ? 0.0 : u(rng);
    d.rows.push_back(dense(x));
    d.labels.push_back(i % 2 ? kFake : kTrue);
  }
  return d;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

class LossTest : public ::testing::TestWithParam<Loss> {};

TEST_P(LossTest, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int instance = 0; instance < 50; ++instance) {
    const auto data = random_sparse(rng, 3 + testing::pick(rng, 8), 1 + testing::pick(rng, 6));
    const double c = 0.1 + u(rng) * u(rng);
    const LinearObjective objective(data.rows, data.labels, GetParam(), std::abs(c) + 0.1, true);
    std::vector<double> params(objective.parameter_count());
    for (auto& p : params) p = u(rng);
    const auto analytic = objective.gradient(params);
    const auto numeric = oracle::numeric_gradient(
        [&](const std::vector<double>& x) { return objective.value(x); }, params);
    ASSERT_LE(max_abs_diff(analytic, numeric), 1e-5 * std::max(1.0, max_abs(analytic)));
  }
}

TEST_P(LossTest, SeparatesBlobsAndObjectiveNeverIncreases) {
  std::mt19937_64 rng(32);
  const auto data = blobs(rng, 20, 3, 2.0);
  TrainConfig config;
  config.loss = GetParam();
  const auto result = train(data.rows, data.labels, config);
  EXPECT_TRUE(result.converged) << result.warning;
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    EXPECT_EQ(predict(result.model, data.rows[i]), data.labels[i]);
  }
  for (std::size_t i = 1; i < result.objective_trace.size(); ++i) {
    EXPECT_LE(result.objective_trace[i], result.objective_trace[i - 1]);
  }
  EXPECT_LE(result.gradient_norm, config.tolerance);
}

TEST_P(LossTest, FlippedLabelsNegateWeights) {
  std::mt19937_64 rng(33);
  auto data = random_sparse(rng, 30, 5);
  TrainConfig config;
  config.loss = GetParam();
  config.tolerance = 1e-10;
  const auto a = train(data.rows, data.labels, config).model;
  for (auto& l : data.labels) l = other_label(l);
  const auto b = train(data.rows, data.labels, config).model;
  for (std::size_t j = 0; j < a.weights.size(); ++j) EXPECT_NEAR(a.weights[j], -b.weights[j], 1e-6);
  EXPECT_NEAR(a.bias, -b.bias, 1e-6);
}

TEST_P(LossTest, DuplicatedDataWithHalvedCIsUnchanged) {
  std::mt19937_64 rng(34);
  const auto data = random_sparse(rng, 24, 4);
  TrainConfig config;
  config.loss = GetParam();
  config.tolerance = 1e-10;
  const auto once = train(data.rows, data.labels, config).model;
  Dataset twice = data;
  twice.rows.insert(twice.rows.end(), data.rows.begin(), data.rows.end());
  twice.labels.insert(twice.labels.end(), data.labels.begin(), data.labels.end());
  config.c = 0.5;
  const auto doubled = train(twice.rows, twice.labels, config).model;
  EXPECT_LE(max_abs_diff(once.weights, doubled.weights), 1e-6);
  EXPECT_NEAR(once.bias, doubled.bias, 1e-6);
}

TEST_P(LossTest, Deterministic) {
  std::mt19937_64 rng(35);
  const auto data = random_sparse(rng, 40, 8);
  TrainConfig config;
  config.loss = GetParam();
  EXPECT_EQ(train(data.rows, data.labels, config).model, train(data.rows, data.labels, config).model);
}

INSTANTIATE_TEST_SUITE_P(Losses, LossTest, ::testing::Values(Loss::kSquaredHinge, Loss::kLogistic));

TEST(TrainSvm, SeparablePair) {
  const std::vector<SparseVector> rows = {dense({1, 0}), dense({-1, 0})};
  const std::vector<Label> labels = {kFake, kTrue};
  const auto model = train_svm(rows, labels).model;
  EXPECT_EQ(model.kind, ModelKind::kSvm);
  EXPECT_EQ(predict(model, rows[0]), kFake);
  EXPECT_EQ(predict(model, rows[1]), kTrue);
}

TEST(TrainLogReg, SeparablePairProbabilities) {
  const std::vector<SparseVector> rows = {dense({1, 0}), dense({-1, 0})};
  const std::vector<Label> labels = {kFake, kTrue};
  const auto model = train_logreg(rows, labels).model;
  EXPECT_EQ(model.kind, ModelKind::kLogReg);
  EXPECT_GT(model.weights[0], 0.0);
  EXPECT_GT(predict_proba(model, rows[0]), 0.5);
  EXPECT_LT(predict_proba(model, rows[1]), 0.5);
}

TEST(TrainLogReg, IdenticalFeaturesGiveHalf) {
  std::vector<SparseVector> rows(6, dense({1, 2}));
  const std::vector<Label> labels = {kFake, kTrue, kFake, kTrue, kFake, kTrue};
  const auto model = train_logreg(rows, labels).model;
  EXPECT_NEAR(model.weights[0], 0.0, 1e-6);
  EXPECT_NEAR(model.weights[1], 0.0, 1e-6);
  EXPECT_NEAR(predict_proba(model, rows[0]), 0.5, 1e-6);
}

TEST(TrainLogReg, GradientAtOptimumIsBelowTolerance) {
  std::mt19937_64 rng(36);
  const auto data = random_sparse(rng, 50, 6);
  const auto result = train_logreg(data.rows, data.labels);
  std::vector<double> params = result.model.weights;
  params.push_back(result.model.bias);
  const LinearObjective objective(data.rows, data.labels, Loss::kLogistic, 1.0, true);
  const auto numeric = oracle::numeric_gradient(
      [&](const std::vector<double>& x) { return objective.value(x); }, params);
  double sq = 0.0;
  for (double g : numeric) sq += g * g;
  EXPECT_LE(std::sqrt(sq), 1e-4 + 1e-6);
}

TEST(Train, InputValidation) {
  const std::vector<SparseVector> rows = {dense({1, 0}), dense({-1, 0})};
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIoError;
  };
  const std::vector<Label> same = {kFake, kFake};
  EXPECT_EQ(code_of([&] { train_svm(rows, same); }), ErrorCode::kSingleClassInput);
  const std::vector<Label> one = {kFake};
  EXPECT_EQ(code_of([&] { train_svm(rows, one); }), ErrorCode::kLengthMismatch);
  const std::vector<SparseVector> ragged = {dense({1, 0}), dense({1, 0, 1})};
  const std::vector<Label> both = {kFake, kTrue};
  EXPECT_EQ(code_of([&] { train_svm(ragged, both); }), ErrorCode::kDimensionMismatch);
}

TEST(Train, MaxIterationsReturnsModelWithWarning) {
  std::mt19937_64 rng(37);
  const auto data = random_sparse(rng, 40, 6);
  TrainConfig config;
  config.max_iterations = 1;
  config.tolerance = 1e-14;
  const auto result = train_svm(data.rows, data.labels, config);
  EXPECT_FALSE(result.converged);
  EXPECT_FALSE(result.warning.empty());
  EXPECT_EQ(result.model.weights.size(), 6u);
}

TEST(Predict, Examples) {
  LinearModel model;
  model.weights = {1.0, 0.0};
  EXPECT_EQ(predict(model, dense({2, 0})), kFake);
  model.bias = -0.5;
  EXPECT_EQ(predict(model, dense({0, 0})), kTrue);
  model.bias = 0.0;
  PredictionDiagnostics diagnostics;
  EXPECT_EQ(predict(model, dense({0, 0}), &diagnostics), kTrue);
  EXPECT_EQ(diagnostics.ties, 1u);
  EXPECT_THROW(predict(model, dense({1, 0, 0})), Error);
}

TEST(PredictProba, Examples) {
  LinearModel model;
  model.kind = ModelKind::kLogReg;
  model.weights = {std::log(3.0), 0.0};
  EXPECT_DOUBLE_EQ(predict_proba(model, dense({0, 0})), 0.5);
  EXPECT_NEAR(predict_proba(model, dense({1, 0})), 0.75, 1e-12);
  double previous = 0.0;
  for (double x = -50; x <= 50; x += 0.5) {
    const double p = predict_proba(model, dense({x, 0}));
    EXPECT_GE(p, previous);
    previous = p;
  }
  EXPECT_NEAR(previous, 1.0, 1e-12);
  model.kind = ModelKind::kSvm;
  EXPECT_THROW(predict_proba(model, dense({1, 0})), Error);
}

}  // namespace
}  // namespace spreader
