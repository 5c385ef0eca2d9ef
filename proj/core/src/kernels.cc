// Copyright 2026 The rationale-bench Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rbench/kernels.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rbench/error.h"

namespace rbench::kernels {
namespace {

void CheckFinite(const std::vector<double>& data) {
  for (double v : data) {
    if (!std::isfinite(v)) throw InvalidArgument("matrix entry is not finite");
  }
}

std::string Shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  CheckFinite(data_);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw InvalidArgument("matrix data has " + std::to_string(data_.size()) +
                          " entries, expected " + std::to_string(rows * cols));
  }
  CheckFinite(data_);
}

Matrix Matrix::FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  for (const auto& r : rows) copy.emplace_back(r);
  return FromRows(copy);
}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix();
  const std::size_t cols = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw InvalidArgument("ragged matrix rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return Matrix(rows.size(), cols, std::move(data));
}

Matrix AttentionWeights(const Matrix& q, const Matrix& keys, std::size_t d) {
  if (d == 0) throw InvalidArgument("attention scale d must be >= 1");
  if (q.cols() != keys.cols()) {
    throw InvalidArgument("query " + Shape(q) + " and key " + Shape(keys) +
                          " widths differ");
  }
  if (keys.rows() == 0) throw InvalidArgument("attention needs at least one key");
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Matrix weights(q.rows(), keys.rows());
  std::vector<double> logits(keys.rows());
  for (std::size_t i = 0; i < q.rows(); ++i) {
    for (std::size_t j = 0; j < keys.rows(); ++j) {
      double dot = 0.0;
      for (std::size_t c = 0; c < q.cols(); ++c) dot += q(i, c) * keys(j, c);
      logits[j] = dot * scale;
    }
    const double peak = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    for (std::size_t j = 0; j < keys.rows(); ++j) {
      logits[j] = std::exp(logits[j] - peak);
      total += logits[j];
    }
    for (std::size_t j = 0; j < keys.rows(); ++j) weights(i, j) = logits[j] / total;
  }
  return weights;
}

Matrix ScaledDotAttention(const Matrix& q, const Matrix& keys,
                          const Matrix& values, std::size_t d) {
  if (keys.rows() != values.rows()) {
    throw InvalidArgument("key " + Shape(keys) + " and value " + Shape(values) +
                          " row counts differ");
  }
  const Matrix weights = AttentionWeights(q, keys, d);
  Matrix out(q.rows(), values.cols());
  for (std::size_t i = 0; i < q.rows(); ++i) {
    for (std::size_t j = 0; j < values.rows(); ++j) {
      const double w = weights(i, j);
      for (std::size_t c = 0; c < values.cols(); ++c) out(i, c) += w * values(j, c);
    }
  }
  return out;
}

Matrix ConcatRows(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) {
    throw InvalidArgument("cannot stack " + Shape(a) + " on " + Shape(b));
  }
  std::vector<double> data = a.data();
  data.insert(data.end(), b.data().begin(), b.data().end());
  return Matrix(a.rows() + b.rows(), a.cols(), std::move(data));
}

Matrix ProjectFeatures(const Matrix& features, const Matrix& constants,
                       const ProjectionOptions& options) {
  if (options.num_layers == 0) throw InvalidArgument("num_layers must be >= 1");
  if (features.rows() > 0 && constants.rows() > 0 &&
      features.cols() != constants.cols()) {
    throw InvalidArgument("features " + Shape(features) + " and constants " +
                          Shape(constants) + " widths differ");
  }
  Matrix h = ConcatRows(features, constants);
  if (h.rows() == 0) return h;
  for (std::size_t layer = 0; layer < options.num_layers; ++layer) {
    Matrix attended = ScaledDotAttention(h, h, h, h.cols());
    if (options.residual) {
      std::vector<double> sum = attended.data();
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += h.data()[k];
      attended = Matrix(h.rows(), h.cols(), std::move(sum));
    }
    h = std::move(attended);
  }
  return h;
}

Matrix ConcatProjected(const Matrix& image_proj, const Matrix& question_proj) {
  return ConcatRows(image_proj, question_proj);
}

namespace {

void CheckBceInputs(const Matrix& predicted, const Matrix& target) {
  if (predicted.rows() != target.rows() || predicted.cols() != target.cols()) {
    throw InvalidArgument("prediction " + Shape(predicted) + " and target " +
                          Shape(target) + " shapes differ");
  }
  for (double p : predicted.data()) {
    if (!(p > 0.0 && p < 1.0)) {
      throw InvalidArgument("predicted score must lie strictly inside (0, 1), got " +
                            std::to_string(p));
    }
  }
  for (double s : target.data()) {
    if (s < 0.0 || s > 1.0) {
      throw InvalidArgument("target score must be in [0, 1], got " +
                            std::to_string(s));
    }
  }
}

}  // namespace

double BceAnswerLoss(const Matrix& predicted, const Matrix& target) {
  CheckBceInputs(predicted, target);
  double loss = 0.0;
  for (std::size_t k = 0; k < predicted.data().size(); ++k) {
    const double p = predicted.data()[k];
    const double s = target.data()[k];
    // log1p keeps precision when p is within a few ulps of 0 or 1.
    loss -= s * std::log(p) + (1.0 - s) * std::log1p(-p);
  }
  return std::max(loss, 0.0);
}

Matrix BceAnswerGradient(const Matrix& predicted, const Matrix& target) {
  CheckBceInputs(predicted, target);
  std::vector<double> grad(predicted.data().size());
  for (std::size_t k = 0; k < grad.size(); ++k) {
    const double p = predicted.data()[k];
    const double s = target.data()[k];
    grad[k] = -(s / p - (1.0 - s) / (1.0 - p));
  }
  return Matrix(predicted.rows(), predicted.cols(), std::move(grad));
}

double LmNllLoss(const std::vector<std::vector<double>>& token_log_probs) {
  double loss = 0.0;
  for (const auto& seq : token_log_probs) {
    for (double lp : seq) {
      if (!std::isfinite(lp) || lp > 0.0) {
        throw InvalidArgument("token log-probability must be finite and <= 0, got " +
                              std::to_string(lp));
      }
      loss -= lp;
    }
  }
  return loss;
}

double TotalLoss(double answer_loss, double rationale_loss) {
  if (!(answer_loss >= 0.0) || !(rationale_loss >= 0.0)) {
    throw InvalidArgument("loss terms must be non-negative");
  }
  return answer_loss + rationale_loss;
}

}  // namespace rbench::kernels
