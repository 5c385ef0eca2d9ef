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

#include "rbench/detection_eval.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rbench/error.h"

namespace rbench {
namespace {

void CheckThreshold(double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw ConfigError("iou threshold must be in (0, 1], got " +
                      std::to_string(iou_threshold));
  }
}

// Indices of dets sorted by descending score, stable on ties.
std::vector<std::size_t> RankByScore(std::span<const Detection> dets) {
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&dets](std::size_t a, std::size_t b) {
                     return dets[a].score > dets[b].score;
                   });
  return order;
}

struct RankedFlag {
  double score;
  bool tp;
};

}  // namespace

Detection::Detection(BoundingBox box, double score) : box(box), score(score) {
  if (!std::isfinite(score) || score < 0.0 || score > 1.0) {
    throw InvalidArgument("detection score must be in [0, 1], got " +
                          std::to_string(score));
  }
}

std::vector<bool> MatchDetections(std::span<const Detection> dets,
                                  std::span<const BoundingBox> gts,
                                  double iou_threshold) {
  CheckThreshold(iou_threshold);
  std::vector<bool> claimed(gts.size(), false);
  std::vector<bool> flags;
  flags.reserve(dets.size());
  for (std::size_t idx : RankByScore(dets)) {
    double best_iou = -1.0;
    std::size_t best_gt = gts.size();
    for (std::size_t g = 0; g < gts.size(); ++g) {
      const double overlap = Iou(dets[idx].box, gts[g]);
      if (overlap > best_iou) {
        best_iou = overlap;
        best_gt = g;
      }
    }
    bool tp = false;
    if (best_gt < gts.size() && best_iou >= iou_threshold &&
        !claimed[best_gt]) {
      claimed[best_gt] = true;
      tp = true;
    }
    flags.push_back(tp);
  }
  return flags;
}

PrCurve ComputePrCurve(const std::vector<bool>& tp_flags, std::size_t num_gt) {
  PrCurve curve;
  curve.num_gt = num_gt;
  if (num_gt == 0) return curve;
  curve.points.reserve(tp_flags.size());
  std::size_t tp = 0;
  for (std::size_t k = 0; k < tp_flags.size(); ++k) {
    if (tp_flags[k]) ++tp;
    curve.points.push_back(
        {static_cast<double>(tp) / static_cast<double>(k + 1),
         static_cast<double>(tp) / static_cast<double>(num_gt)});
  }
  return curve;
}

double AveragePrecision(const PrCurve& curve) {
  const auto& pts = curve.points;
  if (pts.empty() || curve.num_gt == 0) return 0.0;
  // Envelope: best precision achievable at this recall or beyond.
  std::vector<double> envelope(pts.size());
  double running = 0.0;
  for (std::size_t k = pts.size(); k-- > 0;) {
    running = std::max(running, pts[k].precision);
    envelope[k] = running;
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (pts[k].recall > prev_recall) {
      ap += (pts[k].recall - prev_recall) * envelope[k];
      prev_recall = pts[k].recall;
    }
  }
  return std::clamp(ap, 0.0, 1.0);
}

ApResult SampleAp(const SampleDetections& sample, double iou_threshold) {
  return DatasetAp(std::span<const SampleDetections>(&sample, 1),
                   iou_threshold);
}

ApResult DatasetAp(std::span<const SampleDetections> samples,
                   double iou_threshold) {
  CheckThreshold(iou_threshold);
  if (samples.empty()) {
    throw InvalidArgument("dataset AP needs at least one sample");
  }
  ApResult result;
  std::vector<RankedFlag> pooled;
  for (const auto& sample : samples) {
    result.num_gt += sample.gts.size();
    const auto order = RankByScore(sample.dets);
    const auto flags = MatchDetections(sample.dets, sample.gts, iou_threshold);
    for (std::size_t k = 0; k < order.size(); ++k) {
      pooled.push_back({sample.dets[order[k]].score, flags[k]});
    }
  }
  // Within a sample the flags are already in score order, so a stable sort of
  // the concatenation keeps (sample, input) order among equal scores.
  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const RankedFlag& a, const RankedFlag& b) {
                     return a.score > b.score;
                   });
  std::vector<bool> flags;
  flags.reserve(pooled.size());
  for (const auto& f : pooled) {
    flags.push_back(f.tp);
    if (f.tp) ++result.num_tp;
  }
  result.num_dets = pooled.size();
  result.no_ground_truth = result.num_gt == 0 && result.num_dets > 0;
  result.ap = AveragePrecision(ComputePrCurve(flags, result.num_gt));
  return result;
}

}  // namespace rbench
