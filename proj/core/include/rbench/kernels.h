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

#ifndef RBENCH_KERNELS_H_
#define RBENCH_KERNELS_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rbench::kernels {

// Dense row-major matrix of finite doubles. A matrix with zero rows is valid
// and keeps its column count.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws InvalidArgument when data.size() != rows * cols or any entry is
  // not finite.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  static Matrix FromRows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Row-wise softmax of q K^T / sqrt(d). Throws InvalidArgument when q and K
// differ in width, K is empty or d == 0.
Matrix AttentionWeights(const Matrix& q, const Matrix& keys, std::size_t d);

// softmax(q K^T / sqrt(d)) V. Each output row is a convex combination of the
// rows of V.
Matrix ScaledDotAttention(const Matrix& q, const Matrix& keys,
                          const Matrix& values, std::size_t d);

// Stacks a's rows on top of b's. Throws InvalidArgument on a width mismatch
// unless one side has no rows.
Matrix ConcatRows(const Matrix& a, const Matrix& b);

struct ProjectionOptions {
  std::size_t num_layers = 8;
  bool residual = true;
};

// Appends the learned constant rows to the features and runs num_layers of
// self-attention over the result (q = K = V = current activations, d = width),
// adding the layer input back when residual is set.
Matrix ProjectFeatures(const Matrix& features, const Matrix& constants,
                       const ProjectionOptions& options = {});

// Joint sequence fed to the language model: image rows then question rows.
Matrix ConcatProjected(const Matrix& image_proj, const Matrix& question_proj);

// Binary cross-entropy summed over all M x N entries (natural log).
// Throws InvalidArgument unless every prediction lies strictly inside (0, 1),
// every target is in [0, 1] and the shapes agree.
double BceAnswerLoss(const Matrix& predicted, const Matrix& target);

// dL/d(predicted) for BceAnswerLoss.
Matrix BceAnswerGradient(const Matrix& predicted, const Matrix& target);

// Negative sum of per-token log-probabilities over every sequence. Throws
// InvalidArgument on a positive or non-finite entry.
double LmNllLoss(const std::vector<std::vector<double>>& token_log_probs);

// L_ans + L_tr. Throws InvalidArgument when either term is negative.
double TotalLoss(double answer_loss, double rationale_loss);

}  // namespace rbench::kernels

#endif  // RBENCH_KERNELS_H_
