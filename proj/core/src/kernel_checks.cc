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

#include "rbench/kernel_checks.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "rbench/error.h"
#include "rbench/serialization.h"

namespace rbench::kernels {
namespace {

constexpr int kInstances = 100;
constexpr double kSoftmaxTolerance = 1e-9;
constexpr double kGradientStep = 1e-6;
constexpr double kGradientRelTolerance = 1e-5;
constexpr double kFixtureTolerance = 1e-9;

std::string Sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

Matrix RandomMatrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                    double lo = -2.0, double hi = 2.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> data(rows * cols);
  for (auto& v : data) v = dist(rng);
  return Matrix(rows, cols, std::move(data));
}

double MaxAbsDiff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  }
  return worst;
}

CheckResult SoftmaxRows(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(1, 6);
  double worst = 0.0;
  bool negative = false;
  for (int t = 0; t < kInstances; ++t) {
    const std::size_t dk = size(rng);
    const Matrix w = AttentionWeights(RandomMatrix(rng, size(rng), dk, -5, 5),
                                      RandomMatrix(rng, size(rng), dk, -5, 5), dk);
    for (std::size_t i = 0; i < w.rows(); ++i) {
      double sum = 0.0;
      for (double v : w.row(i)) {
        sum += v;
        negative |= v < 0.0;
      }
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  return {"softmax rows sum to 1 and are non-negative",
          worst <= kSoftmaxTolerance && !negative, "max |sum-1| = " + Sci(worst)};
}

CheckResult ConvexHull(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(1, 6);
  bool ok = true;
  for (int t = 0; t < kInstances && ok; ++t) {
    const std::size_t dk = size(rng);
    const std::size_t n = size(rng);
    const Matrix v = RandomMatrix(rng, n, size(rng));
    const Matrix out = ScaledDotAttention(RandomMatrix(rng, size(rng), dk),
                                          RandomMatrix(rng, n, dk), v, dk);
    for (std::size_t c = 0; c < v.cols(); ++c) {
      double lo = INFINITY;
      double hi = -INFINITY;
      for (std::size_t j = 0; j < n; ++j) {
        lo = std::min(lo, v(j, c));
        hi = std::max(hi, v(j, c));
      }
      for (std::size_t i = 0; i < out.rows(); ++i) {
        ok &= out(i, c) >= lo - 1e-12 && out(i, c) <= hi + 1e-12;
      }
    }
  }
  return {"attention output inside the convex hull of V", ok, ""};
}

CheckResult PermutationEquivariance(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(1, 6);
  double worst = 0.0;
  for (int t = 0; t < kInstances; ++t) {
    const std::size_t dk = size(rng);
    const std::size_t n = size(rng);
    const Matrix q = RandomMatrix(rng, size(rng), dk);
    const Matrix k = RandomMatrix(rng, n, dk);
    const Matrix v = RandomMatrix(rng, n, size(rng));
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix kp(n, k.cols());
    Matrix vp(n, v.cols());
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t c = 0; c < k.cols(); ++c) kp(j, c) = k(perm[j], c);
      for (std::size_t c = 0; c < v.cols(); ++c) vp(j, c) = v(perm[j], c);
    }
    worst = std::max(worst, MaxAbsDiff(ScaledDotAttention(q, k, v, dk),
                                       ScaledDotAttention(q, kp, vp, dk)));
  }
  return {"attention invariant to joint K/V row permutation", worst <= 1e-12,
          "max diff = " + Sci(worst)};
}

CheckResult BceGradient(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> size(1, 4);
  std::uniform_real_distribution<double> prob(0.02, 0.98);
  const double soft_targets[] = {0.0, 0.3, 0.6, 0.9, 1.0};
  std::uniform_int_distribution<int> pick(0, 4);
  double worst = 0.0;
  for (int t = 0; t < kInstances; ++t) {
    const std::size_t m = size(rng);
    const std::size_t n = size(rng);
    Matrix pred(m, n);
    Matrix target(m, n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        pred(i, j) = prob(rng);
        target(i, j) = soft_targets[pick(rng)];
      }
    }
    const Matrix grad = BceAnswerGradient(pred, target);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Matrix plus = pred;
        Matrix minus = pred;
        plus(i, j) += kGradientStep;
        minus(i, j) -= kGradientStep;
        const double numeric =
            (BceAnswerLoss(plus, target) - BceAnswerLoss(minus, target)) / (2 * kGradientStep);
        const double analytic = grad(i, j);
        const double denom = std::max(std::abs(analytic), std::abs(numeric));
        const double rel = denom == 0.0 ? 0.0 : std::abs(analytic - numeric) / denom;
        worst = std::max(worst, rel);
      }
    }
  }
  return {"BCE analytic gradient matches central differences",
          worst <= kGradientRelTolerance, "max relative error = " + Sci(worst)};
}

CheckResult NllMonotone(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> prob(0.01, 1.0);
  std::uniform_real_distribution<double> shrink(0.1, 0.99);
  bool ok = true;
  for (int t = 0; t < kInstances; ++t) {
    std::vector<std::vector<double>> seqs(3);
    for (auto& s : seqs) {
      for (int k = 0; k < 5; ++k) s.push_back(std::log(prob(rng)));
    }
    const double base = LmNllLoss(seqs);
    auto lowered = seqs;
    lowered[t % 3][t % 5] = std::log(std::exp(lowered[t % 3][t % 5]) * shrink(rng));
    ok &= LmNllLoss(lowered) > base;
  }
  return {"NLL strictly increases when a token probability drops", ok, ""};
}

CheckResult Projection(const std::filesystem::path& path) {
  CheckResult r{"projection fixture matches the hand forward pass", false, ""};
  try {
    const ProjectionFixture f = LoadProjectionFixture(path);
    ProjectionOptions opts{1, f.residual};
    double worst = MaxAbsDiff(ProjectFeatures(f.features, f.constants, opts), f.expected_1_layer);
    if (f.expected_2_layers) {
      opts.num_layers = 2;
      worst = std::max(worst, MaxAbsDiff(ProjectFeatures(f.features, f.constants, opts),
                                         *f.expected_2_layers));
    }
    r.passed = worst <= kFixtureTolerance;
    r.detail = "max diff = " + Sci(worst);
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  return r;
}

}  // namespace

Matrix MatrixFromJson(const nlohmann::json& node) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : node) rows.push_back(r.get<std::vector<double>>());
  return Matrix::FromRows(rows);
}

ProjectionFixture LoadProjectionFixture(const std::filesystem::path& path) {
  const nlohmann::json node = ReadJsonFile(path);
  ProjectionFixture f;
  f.features = MatrixFromJson(node.at("features"));
  f.constants = MatrixFromJson(node.at("constants"));
  f.residual = node.value("residual", true);
  f.expected_1_layer = MatrixFromJson(node.at("expected_1_layer"));
  if (node.contains("expected_2_layers")) {
    f.expected_2_layers = MatrixFromJson(node.at("expected_2_layers"));
  }
  return f;
}

std::vector<CheckResult> RunKernelChecks(
    const std::optional<std::filesystem::path>& projection_fixture, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> results;
  results.push_back(SoftmaxRows(rng));
  results.push_back(ConvexHull(rng));
  results.push_back(PermutationEquivariance(rng));
  results.push_back(BceGradient(rng));
  results.push_back(NllMonotone(rng));
  if (projection_fixture) results.push_back(Projection(*projection_fixture));
  return results;
}

}  // namespace rbench::kernels
