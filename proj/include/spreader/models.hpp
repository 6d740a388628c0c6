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

#ifndef SPREADER_MODELS_HPP_
#define SPREADER_MODELS_HPP_

// L2-regularized linear classifiers (squared-hinge SVM and logistic
// regression) trained in the primal with a truncated Newton method.

#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "spreader/error.hpp"
#include "spreader/label.hpp"
#include "spreader/objective.hpp"
#include "spreader/vectorize.hpp"

namespace spreader {

enum class ModelKind { kSvm, kLogReg };

inline std::string_view model_kind_name(ModelKind kind) {
  return kind == ModelKind::kSvm ? "svm" : "logreg";
}

struct TrainConfig {
  double c = 1.0;
  double tolerance = 1e-4;
  int max_iterations = 1000;
  Loss loss = Loss::kSquaredHinge;
  bool fit_intercept = true;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct LinearModel {
  ModelKind kind = ModelKind::kSvm;
  std::vector<double> weights;
  double bias = 0.0;
  /// Vocabularies that map an author into the weight space. Empty for models
  /// trained directly on vectors.
  FeatureSpec features;
  Language language = Language::kEn;
  TrainConfig config;

  std::size_t dimension() const { return weights.size(); }

  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

struct TrainResult {
  LinearModel model;
  bool converged = false;
  int iterations = 0;
  double gradient_norm = 0.0;
  /// Objective after each outer iteration, starting with the value at zero.
  std::vector<double> objective_trace;
  std::string warning;
};

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline void validate_training_input(std::span<const SparseVector> rows,
                                    std::span<const Label> labels) {
  if (rows.size() != labels.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(rows.size()) + " vectors vs " +
                                                std::to_string(labels.size()) + " labels");
  }
  if (rows.size() < 2) throw Error(ErrorCode::kSingleClassInput, "need at least two samples");
  const std::size_t dim = rows.front().dimension;
  bool has_pos = false;
  bool has_neg = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].dimension != dim) {
      throw Error(ErrorCode::kDimensionMismatch, "row " + std::to_string(i) + " has dimension " +
                                                     std::to_string(rows[i].dimension) +
                                                     ", expected " + std::to_string(dim));
    }
    (labels[i] == Label::kFakeNewsSpreader ? has_pos : has_neg) = true;
  }
  if (!(has_pos && has_neg)) throw Error(ErrorCode::kSingleClassInput, "only one class present");
}

}  // namespace detail

/// Minimizes the objective for config.loss starting from zero. Each outer
/// step solves the Newton system by conjugate gradients and backtracks until
/// the objective decreases; stops once |gradient| <= tolerance.
inline TrainResult train(std::span<const SparseVector> rows, std::span<const Label> labels,
                         const TrainConfig& config) {
  detail::validate_training_input(rows, labels);
  if (!(config.c > 0.0) || !(config.tolerance > 0.0) || config.max_iterations < 1) {
    throw Error(ErrorCode::kInvalidConfig, "C, tolerance and max_iterations must be positive");
  }
  const LinearObjective objective(rows, labels, config.loss, config.c, config.fit_intercept);
  const std::size_t p = objective.parameter_count();

  std::vector<double> params(p, 0.0);
  std::vector<double> m = objective.margins(params);
  double f = objective.value_from_margins(params, m);
  std::vector<double> g = objective.gradient_from_margins(params, m);
  double gnorm = detail::norm(g);

  TrainResult result;
  result.objective_trace.push_back(f);
  const std::size_t max_cg = std::min<std::size_t>(p, 1000);

  while (gnorm > config.tolerance && result.iterations < config.max_iterations) {
    // Truncated conjugate gradients on H d = -g.
    const std::vector<double> curv = objective.curvature(m);
    std::vector<double> d(p, 0.0);
    std::vector<double> r(g.size());
    for (std::size_t k = 0; k < p; ++k) r[k] = -g[k];
    std::vector<double> dir = r;
    double rr = detail::dot(r, r);
    const double cg_tol = std::min(0.5, std::sqrt(gnorm)) * gnorm;
    for (std::size_t it = 0; it < max_cg && std::sqrt(rr) > cg_tol; ++it) {
      const std::vector<double> hd = objective.hessian_vector(curv, dir);
      const double curvature_along = detail::dot(dir, hd);
      if (curvature_along <= 1e-300) break;
      const double alpha = rr / curvature_along;
      for (std::size_t k = 0; k < p; ++k) {
        d[k] += alpha * dir[k];
        r[k] -= alpha * hd[k];
      }
      const double rr_next = detail::dot(r, r);
      const double beta = rr_next / rr;
      rr = rr_next;
      for (std::size_t k = 0; k < p; ++k) dir[k] = r[k] + beta * dir[k];
    }
    double slope = detail::dot(g, d);
    if (!(slope < 0.0)) {
      for (std::size_t k = 0; k < p; ++k) d[k] = -g[k];
      slope = -gnorm * gnorm;
    }

    // Armijo backtracking.
    double step = 1.0;
    bool accepted = false;
    std::vector<double> trial(p);
    std::vector<double> trial_m;
    double trial_f = f;
    for (int halvings = 0; halvings < 60; ++halvings, step *= 0.5) {
      for (std::size_t k = 0; k < p; ++k) trial[k] = params[k] + step * d[k];
      trial_m = objective.margins(trial);
      trial_f = objective.value_from_margins(trial, trial_m);
      if (trial_f <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
    }
    ++result.iterations;
    if (!accepted) {
      result.warning = "line search made no progress (|g| = " + std::to_string(gnorm) + ")";
      break;
    }
    params.swap(trial);
    m.swap(trial_m);
    f = trial_f;
    g = objective.gradient_from_margins(params, m);
    gnorm = detail::norm(g);
    result.objective_trace.push_back(f);
  }

  result.converged = gnorm <= config.tolerance;
  result.gradient_norm = gnorm;
  if (!result.converged && result.warning.empty()) {
    result.warning = "reached max_iterations = " + std::to_string(config.max_iterations) +
                     " with |g| = " + std::to_string(gnorm);
  }
  result.model.kind = config.loss == Loss::kSquaredHinge ? ModelKind::kSvm : ModelKind::kLogReg;
  result.model.config = config;
  result.model.bias = config.fit_intercept ? params.back() : 0.0;
  params.pop_back();
  result.model.weights = std::move(params);
  return result;
}

inline TrainResult train_svm(std::span<const SparseVector> rows, std::span<const Label> labels,
                             TrainConfig config = {}) {
  config.loss = Loss::kSquaredHinge;
  return train(rows, labels, config);
}

inline TrainResult train_logreg(std::span<const SparseVector> rows, std::span<const Label> labels,
                                TrainConfig config = {}) {
  config.loss = Loss::kLogistic;
  return train(rows, labels, config);
}

inline double decision_value(const LinearModel& model, const SparseVector& x) {
  if (x.dimension != model.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "vector dimension " + std::to_string(x.dimension) +
                                                   " vs model " +
                                                   std::to_string(model.dimension()));
  }
  return x.dot(model.weights) + model.bias;
}

struct PredictionDiagnostics {
  std::size_t ties = 0;
};

/// Positive decision values mean fake-news spreader; an exact zero goes to
/// the credible class and is counted as a tie.
inline Label predict(const LinearModel& model, const SparseVector& x,
                     PredictionDiagnostics* diagnostics = nullptr) {
  const double z = decision_value(model, x);
  if (z == 0.0 && diagnostics != nullptr) ++diagnostics->ties;
  return z > 0.0 ? Label::kFakeNewsSpreader : Label::kTrueNewsSpreader;
}

/// Probability of the fake-news class; logistic models only.
inline double predict_proba(const LinearModel& model, const SparseVector& x) {
  if (model.kind != ModelKind::kLogReg) {
    throw Error(ErrorCode::kWrongModelKind, "probabilities need a logistic regression model");
  }
  return sigmoid(decision_value(model, x));
}

}  // namespace spreader

#endif  // SPREADER_MODELS_HPP_
