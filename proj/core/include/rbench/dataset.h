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

#ifndef RBENCH_DATASET_H_
#define RBENCH_DATASET_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbench/geometry.h"

namespace rbench {

struct Answer {
  std::string text;
  double score = 1.0;

  friend bool operator==(const Answer&, const Answer&) = default;
};

// One question/answer/explanation triplet of the source corpus.
struct TripletRecord {
  std::string id;
  std::string image_id;
  std::string question;
  std::vector<Answer> answers;
  std::string explanation;
};

enum class BoxOrigin { kMatched, kHumanAdded };

struct Provenance {
  // Both empty for human-added boxes.
  std::optional<std::int64_t> annotation_id;
  std::optional<std::string> source_category;
  BoxOrigin origin = BoxOrigin::kMatched;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// A finished record: answers plus textual and visual rationale.
// visual_rationale and provenance are parallel arrays.
struct RationaleSample {
  std::string id;
  std::string image_id;
  std::string image_path;
  std::string question;
  std::vector<Answer> answers;
  std::string textual_rationale;
  std::vector<BoundingBox> visual_rationale;
  std::vector<Provenance> provenance;
  // Explicitly marks a sample that has no visual rationale.
  bool no_vr = false;
};

// A machine-matched box offered to the reviewer.
struct Candidate {
  std::int64_t annotation_id = 0;
  std::string category;
  BoundingBox box;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

enum class ReviewStatus { kPending, kAccepted, kRejected };

const char* ToString(ReviewStatus status);
// Throws ParseError for anything other than pending/accepted/rejected.
ReviewStatus ParseReviewStatus(const std::string& text);

struct ReviewDecision {
  std::string id;
  std::vector<int> removed;
  std::vector<BoundingBox> added;
  ReviewStatus status = ReviewStatus::kAccepted;
  // Version of the item the reviewer was looking at.
  std::int64_t version = 0;
};

// A review-queue entry. version counts applied decisions.
struct ReviewItem {
  std::string id;
  std::string image_id;
  std::string image_path;
  double image_width = 0.0;
  double image_height = 0.0;
  std::string question;
  // Highest-scoring answer, shown to the reviewer.
  std::string answer;
  std::vector<Answer> answers;
  std::string textual_rationale;
  std::vector<Candidate> candidates;
  ReviewStatus status = ReviewStatus::kPending;
  std::int64_t version = 0;
  std::optional<ReviewDecision> decision;
};

struct DatasetStats {
  std::size_t num_images = 0;
  std::size_t num_qa_pairs = 0;
  std::size_t num_textual_rationales = 0;
  std::size_t num_visual_rationales = 0;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

}  // namespace rbench

#endif  // RBENCH_DATASET_H_
