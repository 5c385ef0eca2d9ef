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

#ifndef RBENCH_SERIALIZATION_H_
#define RBENCH_SERIALIZATION_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbench/dataset.h"
#include "rbench/synthesis.h"

namespace rbench {

// Output objects keep insertion order so files are byte-stable.
using OrderedJson = nlohmann::ordered_json;

OrderedJson BoxToJson(const BoundingBox& box);
BoundingBox BoxFromJson(const nlohmann::json& node);

OrderedJson ToJson(const TripletRecord& record);
TripletRecord TripletFromJson(const nlohmann::json& node);

// Queue schema. The applied decision is included only when present.
OrderedJson ToJson(const ReviewItem& item);
ReviewItem ReviewItemFromJson(const nlohmann::json& node);

OrderedJson ToJson(const ReviewDecision& decision);
ReviewDecision DecisionFromJson(const nlohmann::json& node);

OrderedJson ToJson(const RationaleSample& sample);
// Rejects an empty box list unless no_vr is set, and a provenance list that
// is neither empty nor parallel to the boxes.
RationaleSample RationaleSampleFromJson(const nlohmann::json& node);

// Validates the COCO invariants: every annotation resolves to a known image
// and category, is non-degenerate and lies within its image (1 px slack).
CocoAnnotations CocoFromJson(const nlohmann::json& node);

// Calls fn for every non-blank line. Any exception raised while parsing or
// inside fn becomes a ParseError carrying path and line number.
void ForEachJsonLine(const std::filesystem::path& path,
                     const std::function<void(const nlohmann::json&)>& fn);

// Writes one compact object per line through a temporary file and a rename.
void WriteJsonLines(const std::filesystem::path& path,
                    std::span<const OrderedJson> lines);

void WriteTextFile(const std::filesystem::path& path, const std::string& content);
std::string ReadTextFile(const std::filesystem::path& path);
nlohmann::json ReadJsonFile(const std::filesystem::path& path);

// Appends one line and flushes it to disk before returning.
void AppendJsonLine(const std::filesystem::path& path, const OrderedJson& line);

std::vector<TripletRecord> LoadTriplets(const std::filesystem::path& path);
CocoAnnotations LoadCoco(const std::filesystem::path& path);
// Newline-delimited, lowercased; blank lines and '#' comments are skipped.
Lexicon LoadLexicon(const std::filesystem::path& path);
CategoryMap LoadCategoryMap(const std::filesystem::path& path);
std::vector<ReviewItem> LoadReviewQueue(const std::filesystem::path& path);
std::vector<ReviewDecision> LoadDecisions(const std::filesystem::path& path);
std::vector<RationaleSample> LoadDataset(const std::filesystem::path& path);

// Returns the number of items written.
std::size_t ExportReviewQueue(std::span<const ReviewItem> items,
                              const std::filesystem::path& path);
std::size_t WriteDataset(std::span<const RationaleSample> samples,
                         const std::filesystem::path& path);

}  // namespace rbench

#endif  // RBENCH_SERIALIZATION_H_
