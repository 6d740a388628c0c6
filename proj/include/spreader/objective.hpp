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

#ifndef SPREADER_OBJECTIVE_HPP_
#define SPREADER_OBJECTIVE_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "spreader/error.hpp"
#include "spreader/label.hpp"
#include "spreader/vectorize.hpp"

namespace spreader {

enum class Loss { kSquaredHinge, kLogistic };

/// Numerically stable log(1 + exp(-m)).
inline double log1p_exp_neg(double m) {
  return m > 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
}

inline double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

inline double label_sign(Label label) {
  return label == Label::kFakeNewsSpreader ? 1.0 : -1.0;
}

/// L2-regularized linear training objective
///   f(w, b) = 1/2 |w|^2 + C * sum_i loss(y_i (w . x_i + b))
/// with the intercept unpenalized. Parameters are laid out as [w..., b];
/// without an intercept b is pinned at zero and its gradient is zero.
class LinearObjective {
 public:
  LinearObjective(std::span<const SparseVector> rows, std::span<const Label> labels, Loss loss,
                  double c, bool fit_intercept)
      : rows_(rows), loss_(loss), c_(c), fit_intercept_(fit_intercept) {
    dimension_ = rows.empty() ? 0 : rows.front().dimension;
    signs_.reserve(labels.size());
    for (Label l : labels) signs_.push_back(label_sign(l));
  }

  std::size_t dimension() const { return dimension_; }
  std::size_t parameter_count() const { return dimension_ + 1; }

  /// Margins y_i (w . x_i + b).
  std::vector<double> margins(std::span<const double> params) const {
    std::vector<double> m(rows_.size());
    const double b = fit_intercept_ ? params[dimension_] : 0.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      m[i] = signs_[i] * (rows_[i].dot(params) + b);
    }
    return m;
  }

  double value(std::span<const double> params) const {
    return value_from_margins(params, margins(params));
  }

  double value_from_margins(std::span<const double> params, std::span<const double> m) const {
    double reg = 0.0;
    for (std::size_t j = 0; j < dimension_; ++j) reg += params[j] * params[j];
    double data = 0.0;
    for (double mi : m) data += loss_value(mi);
    return 0.5 * reg + c_ * data;
  }

  std::vector<double> gradient(std::span<const double> params) const {
    return gradient_from_margins(params, margins(params));
  }

  std::vector<double> gradient_from_margins(std::span<const double> params,
                                            std::span<const double> m) const {
    std::vector<double> g(params.begin(), params.end());
    g[dimension_] = 0.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double coef = c_ * signs_[i] * loss_derivative(m[i]);
      if (coef == 0.0) continue;
      for (const auto& [j, v] : rows_[i].entries) g[j] += coef * v;
      if (fit_intercept_) g[dimension_] += coef;
    }
    return g;
  }

  /// Per-sample curvature of the loss at the given margins (the generalized
  /// second derivative for the squared hinge).
  std::vector<double> curvature(std::span<const double> m) const {
    std::vector<double> d(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) d[i] = loss_second_derivative(m[i]);
    return d;
  }

  /// (I_w + C X~^T D X~) v, where X~ carries a column of ones for the bias.
  std::vector<double> hessian_vector(std::span<const double> curv, std::span<const double> v) const {
    std::vector<double> out(v.begin(), v.end());
    out[dimension_] = 0.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (curv[i] == 0.0) continue;
      double s = rows_[i].dot(v);
      if (fit_intercept_) s += v[dimension_];
      const double coef = c_ * curv[i] * s;
      for (const auto& [j, x] : rows_[i].entries) out[j] += coef * x;
      if (fit_intercept_) out[dimension_] += coef;
    }
    return out;
  }

  double loss_value(double m) const {
    if (loss_ == Loss::kSquaredHinge) {
      const double slack = std::max(0.0, 1.0 - m);
      return slack * slack;
    }
    return log1p_exp_neg(m);
  }

  double loss_derivative(double m) const {
    if (loss_ == Loss::kSquaredHinge) return -2.0 * std::max(0.0, 1.0 - m);
    return -sigmoid(-m);
  }

  double loss_second_derivative(double m) const {
    if (loss_ == Loss::kSquaredHinge) return m < 1.0 ? 2.0 : 0.0;
    const double p = sigmoid(m);
    return p * (1.0 - p);
  }

 private:
  std::span<const SparseVector> rows_;
  std::vector<double> signs_;
  Loss loss_;
  double c_;
  bool fit_intercept_;
  std::size_t dimension_ = 0;
};

}  // namespace spreader

#endif  // SPREADER_OBJECTIVE_HPP_
