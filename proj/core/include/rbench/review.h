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

#ifndef RBENCH_REVIEW_H_
#define RBENCH_REVIEW_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rbench/dataset.h"

namespace rbench {

enum class DecisionOutcome {
  kApplied,
  kUnknownId,
  kConflict,  // decision.version is not the item's current version
  kInvalid,   // bad removal index or added box outside the image
};

struct DecisionResult {
  DecisionOutcome outcome = DecisionOutcome::kApplied;
  std::string reason;
  std::int64_t version = 0;  // item version after the call
};

// In-memory review state with optimistic versioning. Every applied decision
// replaces the item's previous edit (edits are always relative to the
// machine candidates) and bumps its version by one, so replaying the same
// ordered decision log over the original queue reproduces the state.
class ReviewState {
 public:
  explicit ReviewState(std::vector<ReviewItem> queue);

  DecisionResult Check(const ReviewDecision& decision) const;
  DecisionResult Apply(const ReviewDecision& decision);

  const ReviewItem* Find(const std::string& id) const;
  const std::vector<ReviewItem>& items() const { return items_; }

  // Accepted items turned into dataset records, in queue order. Pending and
  // rejected items are left out.
  std::vector<RationaleSample> FinalSamples() const;

 private:
  std::vector<ReviewItem> items_;
  std::map<std::string, std::size_t> index_;
};

// The final record for an item under a decision: kept candidates first (in
// candidate order), then human-added boxes.
RationaleSample ToFinalSample(const ReviewItem& item, const ReviewDecision& decision);

struct RejectedDecision {
  std::size_t position = 0;  // index into the decision list
  std::string id;
  DecisionOutcome outcome = DecisionOutcome::kInvalid;
  std::string reason;
};

// Applies decisions in order and returns the accepted samples.
std::vector<RationaleSample> ApplyReview(std::span<const ReviewItem> queue,
                                         std::span<const ReviewDecision> decisions,
                                         std::vector<RejectedDecision>* rejected = nullptr);

}  // namespace rbench

#endif  // RBENCH_REVIEW_H_
