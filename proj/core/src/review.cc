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

#include "rbench/review.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "rbench/error.h"

namespace rbench {

const char* ToString(ReviewStatus status) {
  switch (status) {
    case ReviewStatus::kPending:
      return "pending";
    case ReviewStatus::kAccepted:
      return "accepted";
    case ReviewStatus::kRejected:
      return "rejected";
  }
  return "pending";
}

ReviewStatus ParseReviewStatus(const std::string& text) {
  if (text == "pending") return ReviewStatus::kPending;
  if (text == "accepted") return ReviewStatus::kAccepted;
  if (text == "rejected") return ReviewStatus::kRejected;
  throw ParseError("unknown review status '" + text + "'");
}

ReviewState::ReviewState(std::vector<ReviewItem> queue) : items_(std::move(queue)) {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (!index_.emplace(items_[i].id, i).second) {
      throw InvalidArgument("duplicate review item id '" + items_[i].id + "'");
    }
  }
}

const ReviewItem* ReviewState::Find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &items_[it->second];
}

DecisionResult ReviewState::Check(const ReviewDecision& decision) const {
  DecisionResult result;
  const ReviewItem* item = Find(decision.id);
  if (item == nullptr) {
    result.outcome = DecisionOutcome::kUnknownId;
    result.reason = "unknown item id '" + decision.id + "'";
    return result;
  }
  result.version = item->version;
  if (decision.status == ReviewStatus::kPending) {
    result.outcome = DecisionOutcome::kInvalid;
    result.reason = "decision status must be accepted or rejected";
    return result;
  }
  if (decision.version != item->version) {
    result.outcome = DecisionOutcome::kConflict;
    result.reason = "stale version " + std::to_string(decision.version) +
                    ", item is at version " + std::to_string(item->version);
    return result;
  }
  for (int idx : decision.removed) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= item->candidates.size()) {
      result.outcome = DecisionOutcome::kInvalid;
      result.reason = "removed index " + std::to_string(idx) + " out of range [0, " +
                      std::to_string(item->candidates.size()) + ")";
      return result;
    }
  }
  for (std::size_t k = 0; k < decision.added.size(); ++k) {
    const BoundingBox& box = decision.added[k];
    if (!box.WithinImage(item->image_width, item->image_height)) {
      std::ostringstream msg;
      msg << "added box " << k << " (" << box.x() << ", " << box.y() << ", "
          << box.w() << ", " << box.h() << ") lies outside the "
          << item->image_width << "x" << item->image_height << " image";
      result.outcome = DecisionOutcome::kInvalid;
      result.reason = msg.str();
      return result;
    }
  }
  return result;
}

DecisionResult ReviewState::Apply(const ReviewDecision& decision) {
  DecisionResult result = Check(decision);
  if (result.outcome != DecisionOutcome::kApplied) return result;
  ReviewItem& item = items_[index_.at(decision.id)];
  item.decision = decision;
  item.status = decision.status;
  ++item.version;
  result.version = item.version;
  return result;
}

std::vector<RationaleSample> ReviewState::FinalSamples() const {
  std::vector<RationaleSample> out;
  for (const auto& item : items_) {
    if (item.status == ReviewStatus::kAccepted && item.decision) {
      out.push_back(ToFinalSample(item, *item.decision));
    }
  }
  return out;
}

RationaleSample ToFinalSample(const ReviewItem& item,
                              const ReviewDecision& decision) {
  RationaleSample sample;
  sample.id = item.id;
  sample.image_id = item.image_id;
  sample.image_path = item.image_path;
  sample.question = item.question;
  sample.answers = item.answers;
  if (sample.answers.empty() && !item.answer.empty()) {
    sample.answers.push_back({item.answer, 1.0});
  }
  sample.textual_rationale = item.textual_rationale;
  const std::set<int> removed(decision.removed.begin(), decision.removed.end());
  for (std::size_t k = 0; k < item.candidates.size(); ++k) {
    if (removed.contains(static_cast<int>(k))) continue;
    const Candidate& c = item.candidates[k];
    sample.visual_rationale.push_back(c.box);
    sample.provenance.push_back({c.annotation_id, c.category, BoxOrigin::kMatched});
  }
  for (const auto& box : decision.added) {
    sample.visual_rationale.push_back(box);
    sample.provenance.push_back({std::nullopt, std::nullopt, BoxOrigin::kHumanAdded});
  }
  sample.no_vr = sample.visual_rationale.empty();
  return sample;
}

std::vector<RationaleSample> ApplyReview(std::span<const ReviewItem> queue,
                                         std::span<const ReviewDecision> decisions,
                                         std::vector<RejectedDecision>* rejected) {
  ReviewState state(std::vector<ReviewItem>(queue.begin(), queue.end()));
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const DecisionResult r = state.Apply(decisions[i]);
    if (r.outcome != DecisionOutcome::kApplied && rejected != nullptr) {
      rejected->push_back({i, decisions[i].id, r.outcome, r.reason});
    }
  }
  return state.FinalSamples();
}

}  // namespace rbench
