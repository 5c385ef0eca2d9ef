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

#ifndef RBENCH_TESTS_SUPPORT_AP_ORACLE_H_
#define RBENCH_TESTS_SUPPORT_AP_ORACLE_H_

#include <cstdint>
#include <random>
#include <vector>

#include "rbench/detection_eval.h"

namespace rbench::testing {

// Brute-force reference for single-sample matching and AP.
//
// Enumerates every assignment of detections to ground-truth boxes (or to
// nothing) and keeps the legal one: ranked by score, each detection picks
// the box with the highest IoU, taking it only when the IoU reaches the
// threshold and no earlier detection holds it. AP is the area under the
// upper precision envelope, integrated over recall steps directly from the
// definition.
struct OracleResult {
  std::vector<bool> tp;
  double ap = 0.0;
};

OracleResult BruteForceAp(const std::vector<Detection>& dets,
                          const std::vector<BoundingBox>& gts, double threshold);

// Integer boxes on an 8x8 grid with random scores from a small set so that
// ties occur.
struct RandomInstance {
  std::vector<Detection> dets;
  std::vector<BoundingBox> gts;
};

RandomInstance MakeRandomInstance(std::mt19937_64& rng, int max_dets = 5, int max_gts = 4);

}  // namespace rbench::testing

#endif  // RBENCH_TESTS_SUPPORT_AP_ORACLE_H_
