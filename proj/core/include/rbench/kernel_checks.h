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

#ifndef RBENCH_KERNEL_CHECKS_H_
#define RBENCH_KERNEL_CHECKS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbench/kernels.h"

namespace rbench::kernels {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ProjectionFixture {
  Matrix features;
  Matrix constants;
  bool residual = true;
  Matrix expected_1_layer;
  std::optional<Matrix> expected_2_layers;
};

Matrix MatrixFromJson(const nlohmann::json& node);
ProjectionFixture LoadProjectionFixture(const std::filesystem::path& path);

// Randomized invariant suite for the kernels (softmax normalization, convex
// hull, permutation equivariance, BCE gradient vs central differences, NLL
// monotonicity) plus the projection fixture when a path is given.
std::vector<CheckResult> RunKernelChecks(
    const std::optional<std::filesystem::path>& projection_fixture,
    std::uint64_t seed = 20240917);

}  // namespace rbench::kernels

#endif  // RBENCH_KERNEL_CHECKS_H_
