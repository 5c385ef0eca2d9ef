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

#ifndef RBENCH_CONFIG_H_
#define RBENCH_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbench/detection_eval.h"
#include "rbench/synthesis.h"

namespace rbench {

inline constexpr std::string_view kToolkitName = "rationale-bench";
inline constexpr std::string_view kToolkitVersion = "0.3.0";

enum class Metric { kBleu4, kRougeL, kCider, kMeteor, kAp, kCosGte, kVts };

std::string_view MetricName(Metric metric);
// Throws ConfigError on an unknown name.
Metric ParseMetric(std::string_view name);
// Comma-separated list, duplicates dropped, order of first appearance kept.
std::vector<Metric> ParseMetricList(std::string_view list);
std::vector<Metric> AllMetrics();

struct RunConfig {
  // eval inputs
  std::filesystem::path dataset;
  std::filesystem::path predictions;
  std::optional<std::filesystem::path> embeddings;
  // synth inputs
  std::filesystem::path triplets;
  std::filesystem::path coco;
  std::filesystem::path category_map;
  std::filesystem::path lexicon;
  std::size_t min_noun_count = kDefaultMinNounCount;

  double iou_threshold = kDefaultIouThreshold;
  std::vector<Metric> metrics = AllMetrics();
  bool per_sample_vts = false;
  bool bleu_smoothing = false;

  std::optional<std::string> embed_url;
  std::optional<std::filesystem::path> embed_cache_dir;
  std::size_t embed_batch_size = 32;

  std::filesystem::path output_dir = ".";
};

// Reads a JSON config. Relative paths are resolved against the directory of
// the config file. Unknown keys are rejected.
RunConfig LoadRunConfig(const std::filesystem::path& path);
RunConfig RunConfigFromJson(const nlohmann::json& node,
                            const std::filesystem::path& base_dir);

// Fills embed_url from RB_EMBED_URL when no value was given.
void ApplyEnvironment(RunConfig& config);

nlohmann::ordered_json ConfigToJson(const RunConfig& config);

}  // namespace rbench

#endif  // RBENCH_CONFIG_H_
