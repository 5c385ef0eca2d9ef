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

#ifndef RBENCH_EVAL_H_
#define RBENCH_EVAL_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbench/config.h"
#include "rbench/dataset.h"
#include "rbench/detection_eval.h"
#include "rbench/embedding.h"
#include "rbench/vts.h"

namespace rbench {

// One line of the predictions file:
//   {"id", "boxes": [{"x","y","w","h","score"}], "textual_rationale"?}
struct Prediction {
  std::string id;
  std::vector<Detection> boxes;
  std::optional<std::string> textual_rationale;
};

Prediction PredictionFromJson(const nlohmann::json& node);
std::vector<Prediction> LoadPredictions(const std::filesystem::path& path);

struct EvalOptions {
  std::vector<Metric> metrics = AllMetrics();
  double iou_threshold = kDefaultIouThreshold;
  bool per_sample_vts = false;
  bool bleu_smoothing = false;
};

struct SampleScores {
  std::string id;
  bool has_prediction = false;
  std::optional<double> bleu4;
  std::optional<double> rouge_l;
  std::optional<double> cider;
  std::optional<double> meteor;
  std::optional<double> ap;
  std::optional<double> cos_raw;
  std::optional<double> cos_gte;
  std::optional<double> vts;
};

struct MetricReport {
  std::vector<Metric> metrics;
  // Fractions; CIDEr is on its x10 scale.
  std::map<Metric, double> values;
  std::optional<VtsReport> fusion;
  std::vector<SampleScores> per_sample;
  std::size_t num_samples = 0;
  std::size_t num_predictions = 0;
  std::size_t num_gt_boxes = 0;
  std::size_t num_detections = 0;
  std::vector<std::string> warnings;
  nlohmann::ordered_json config;

  // Stable key order: toolkit, version, metrics (percent), raw, counts, notes,
  // warnings, config, per_sample.
  nlohmann::ordered_json ToJson() const;
};

// Ids used when embedding the two texts of a sample.
std::string PredictionTextId(const std::string& sample_id);
std::string ReferenceTextId(const std::string& sample_id);

// Scores predictions against the dataset. Samples without a prediction count
// as empty (no boxes, empty text). Throws Error when a prediction id is not in
// the dataset (listing up to 10 ids), ConfigError when metrics is empty or an
// embedding provider is needed but missing.
MetricReport Evaluate(std::span<const RationaleSample> dataset,
                      std::span<const Prediction> predictions,
                      const EvalOptions& options, EmbeddingProvider* provider);

// Loads inputs named by the config, evaluates, and writes report.json and
// report.txt into config.output_dir. provider overrides the one implied by
// the config (embed_url or embeddings file).
MetricReport RunEval(const RunConfig& config, EmbeddingProvider* provider = nullptr);

// Human-readable rendering of a report JSON object.
std::string RenderReportTable(const nlohmann::json& report);

}  // namespace rbench

#endif  // RBENCH_EVAL_H_
