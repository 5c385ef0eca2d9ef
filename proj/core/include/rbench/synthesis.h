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

#ifndef RBENCH_SYNTHESIS_H_
#define RBENCH_SYNTHESIS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rbench/dataset.h"
#include "rbench/geometry.h"

namespace rbench {

using Lexicon = std::set<std::string>;
using NounStats = std::map<std::string, std::size_t>;
// noun -> annotation category name
using CategoryMap = std::map<std::string, std::string>;

inline constexpr std::size_t kDefaultMinNounCount = 20;

struct CocoImage {
  std::string file_name;
  double width = 0.0;
  double height = 0.0;
};

struct CocoBox {
  std::int64_t annotation_id = 0;
  std::int64_t category_id = 0;
  BoundingBox box;
};

// Subset of a COCO instances file. Image ids are kept as strings so they
// can be joined with triplet records directly.
struct CocoAnnotations {
  std::map<std::string, CocoImage> images;
  std::map<std::int64_t, std::string> categories;
  // Sorted by annotation id within each image.
  std::map<std::string, std::vector<CocoBox>> boxes;

  bool HasCategory(const std::string& name) const;
};

// Candidate singular forms of a token, most specific first: the irregular
// table, then the -ies, -es and -s rules. The token itself is not included.
std::vector<std::string> SingularForms(std::string_view token);

// Tokens of text that name a lexicon noun, reduced to their singular form.
// Order-preserving; duplicates are kept.
std::vector<std::string> ExtractNouns(std::string_view text, const Lexicon& lexicon);

// Noun occurrences over question, every answer and explanation of each
// record.
NounStats CountNounFrequencies(std::span<const TripletRecord> corpus,
                               const Lexicon& lexicon);

// Nouns whose count is strictly greater than min_count.
std::set<std::string> FilterFrequent(const NounStats& stats,
                                     std::size_t min_count = kDefaultMinNounCount);

struct CategoryMatch {
  std::set<std::string> categories;
  std::vector<std::string> unmapped;
};

CategoryMatch MapToCategories(std::span<const std::string> nouns,
                              const CategoryMap& category_map);

// Every box on the record's image whose category is in the set, ordered by
// annotation id. Throws InvalidArgument naming the record when its image is
// unknown.
std::vector<Candidate> MatchBoxes(const TripletRecord& record,
                                  const CocoAnnotations& coco,
                                  const std::set<std::string>& categories);

// Queue entry for a record and its candidates, status pending, version 0.
ReviewItem MakeReviewItem(const TripletRecord& record, const CocoImage& image,
                          std::vector<Candidate> candidates);

struct SynthesisInputs {
  std::vector<TripletRecord> triplets;
  CocoAnnotations coco;
  Lexicon lexicon;
  CategoryMap category_map;
  std::size_t min_count = kDefaultMinNounCount;
};

struct SynthesisResult {
  NounStats noun_stats;
  std::set<std::string> frequent_nouns;
  std::vector<ReviewItem> queue;
  std::set<std::string> unmapped_nouns;
  // Records whose image id is missing from the annotations.
  std::vector<std::string> unresolved_records;
};

// Harvest -> filter -> group -> match. The lexicon is extended with the
// category-map keys. Throws ConfigError when the category map names a
// category that the annotations do not define.
SynthesisResult RunSynthesis(const SynthesisInputs& inputs);

// Distinct images, samples, non-empty textual rationales and total boxes.
DatasetStats ComputeDatasetStats(std::span<const RationaleSample> samples);

}  // namespace rbench

#endif  // RBENCH_SYNTHESIS_H_
