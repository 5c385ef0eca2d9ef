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

#ifndef RBENCH_DETECTION_EVAL_H_
#define RBENCH_DETECTION_EVAL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "rbench/geometry.h"

namespace rbench {

inline constexpr double kDefaultIouThreshold = 0.5;

// A single-category detection. Throws InvalidArgument unless score is finite
// and in [0, 1].
struct Detection {
  Detection(BoundingBox box, double score);

  BoundingBox box;
  double score;
};

struct PrPoint {
  double precision;
  double recall;
};

struct PrCurve {
  std::vector<PrPoint> points;
  std::size_t num_gt = 0;
};

// Per-detection true-positive flags, reported in descending-score order.
// Ties keep input order. Each detection is assigned to the ground-truth box
// it overlaps most (lowest index on equal IoU); it is a true positive when
// that IoU reaches the threshold and the box was not already claimed by a
// higher-ranked detection.
//
// Throws ConfigError unless iou_threshold is in (0, 1].
std::vector<bool> MatchDetections(std::span<const Detection> dets,
                                  std::span<const BoundingBox> gts,
                                  double iou_threshold = kDefaultIouThreshold);

// Cumulative precision/recall after each ranked detection. Empty when
// num_gt == 0.
PrCurve ComputePrCurve(const std::vector<bool>& tp_flags, std::size_t num_gt);

// Area under the monotonized precision envelope (all-point interpolation).
// Returns 0 for an empty curve.
double AveragePrecision(const PrCurve& curve);

struct SampleDetections {
  std::vector<Detection> dets;
  std::vector<BoundingBox> gts;
};

struct ApResult {
  double ap = 0.0;
  std::size_t num_gt = 0;
  std::size_t num_dets = 0;
  std::size_t num_tp = 0;
  // Detections were scored but there was no ground truth to recall.
  bool no_ground_truth = false;
};

// AP of a single sample, with the no-ground-truth flag populated.
ApResult SampleAp(const SampleDetections& sample,
                  double iou_threshold = kDefaultIouThreshold);

// Pools all samples into one ranking: matching stays within each sample, but
// detections compete globally by score (ties: sample order, then input
// order). Throws InvalidArgument on empty input.
ApResult DatasetAp(std::span<const SampleDetections> samples,
                   double iou_threshold = kDefaultIouThreshold);

}  // namespace rbench

#endif  // RBENCH_DETECTION_EVAL_H_
