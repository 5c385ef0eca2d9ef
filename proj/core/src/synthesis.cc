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

#include "rbench/synthesis.h"

#include <algorithm>
#include <map>
#include <string>

#include "rbench/error.h"
#include "rbench/text_metrics.h"

namespace rbench {
namespace {

const std::map<std::string, std::string, std::less<>>& Irregulars() {
  static const auto* table = new std::map<std::string, std::string, std::less<>>{
      {"men", "man"},         {"women", "woman"}, {"people", "person"},
      {"children", "child"},  {"sheep", "sheep"}, {"feet", "foot"},
      {"teeth", "tooth"},     {"mice", "mouse"},  {"geese", "goose"},
  };
  return *table;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

bool CocoAnnotations::HasCategory(const std::string& name) const {
  return std::any_of(categories.begin(), categories.end(),
                     [&](const auto& kv) { return kv.second == name; });
}

std::vector<std::string> SingularForms(std::string_view token) {
  std::vector<std::string> forms;
  const auto& irregular = Irregulars();
  if (auto it = irregular.find(token); it != irregular.end()) {
    forms.push_back(it->second);
    return forms;
  }
  if (EndsWith(token, "ies")) {
    forms.push_back(std::string(token.substr(0, token.size() - 3)) + "y");
  }
  if (EndsWith(token, "es")) {
    forms.emplace_back(token.substr(0, token.size() - 2));
  }
  if (EndsWith(token, "s") && !EndsWith(token, "ss")) {
    forms.emplace_back(token.substr(0, token.size() - 1));
  }
  return forms;
}

std::vector<std::string> ExtractNouns(std::string_view text,
                                      const Lexicon& lexicon) {
  std::vector<std::string> nouns;
  for (const auto& token : Tokenize(text)) {
    bool found = false;
    for (auto& form : SingularForms(token)) {
      if (lexicon.contains(form)) {
        nouns.push_back(std::move(form));
        found = true;
        break;
      }
    }
    if (!found && lexicon.contains(token)) nouns.push_back(token);
  }
  return nouns;
}

NounStats CountNounFrequencies(std::span<const TripletRecord> corpus,
                               const Lexicon& lexicon) {
  NounStats stats;
  auto add = [&](std::string_view text) {
    for (const auto& noun : ExtractNouns(text, lexicon)) ++stats[noun];
  };
  for (const auto& record : corpus) {
    add(record.question);
    for (const auto& answer : record.answers) add(answer.text);
    add(record.explanation);
  }
  return stats;
}

std::set<std::string> FilterFrequent(const NounStats& stats,
                                     std::size_t min_count) {
  std::set<std::string> out;
  for (const auto& [noun, count] : stats) {
    if (count > min_count) out.insert(noun);
  }
  return out;
}

CategoryMatch MapToCategories(std::span<const std::string> nouns,
                              const CategoryMap& category_map) {
  CategoryMatch match;
  for (const auto& noun : nouns) {
    if (auto it = category_map.find(noun); it != category_map.end()) {
      match.categories.insert(it->second);
    } else {
      match.unmapped.push_back(noun);
    }
  }
  return match;
}

std::vector<Candidate> MatchBoxes(const TripletRecord& record,
                                  const CocoAnnotations& coco,
                                  const std::set<std::string>& categories) {
  if (!coco.images.contains(record.image_id)) {
    throw InvalidArgument("record '" + record.id + "' references unknown image '" +
                          record.image_id + "'");
  }
  std::vector<Candidate> out;
  auto it = coco.boxes.find(record.image_id);
  if (it == coco.boxes.end() || categories.empty()) return out;
  for (const auto& ann : it->second) {
    const std::string& name = coco.categories.at(ann.category_id);
    if (categories.contains(name)) out.push_back({ann.annotation_id, name, ann.box});
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    return a.annotation_id < b.annotation_id;
  });
  return out;
}

ReviewItem MakeReviewItem(const TripletRecord& record, const CocoImage& image,
                          std::vector<Candidate> candidates) {
  ReviewItem item;
  item.id = record.id;
  item.image_id = record.image_id;
  item.image_path = image.file_name;
  item.image_width = image.width;
  item.image_height = image.height;
  item.question = record.question;
  item.answers = record.answers;
  const Answer* best = nullptr;
  for (const auto& a : record.answers) {
    if (best == nullptr || a.score > best->score) best = &a;
  }
  if (best != nullptr) item.answer = best->text;
  item.textual_rationale = record.explanation;
  item.candidates = std::move(candidates);
  return item;
}

SynthesisResult RunSynthesis(const SynthesisInputs& inputs) {
  std::vector<std::string> unknown;
  for (const auto& [noun, category] : inputs.category_map) {
    if (!inputs.coco.HasCategory(category)) unknown.push_back(noun + "->" + category);
  }
  if (!unknown.empty()) {
    std::string msg = "category map names categories missing from the annotations:";
    for (const auto& u : unknown) msg += " " + u;
    throw ConfigError(msg);
  }

  Lexicon lexicon = inputs.lexicon;
  for (const auto& [noun, category] : inputs.category_map) lexicon.insert(noun);

  SynthesisResult result;
  result.noun_stats = CountNounFrequencies(inputs.triplets, lexicon);
  result.frequent_nouns = FilterFrequent(result.noun_stats, inputs.min_count);
  const Lexicon frequent(result.frequent_nouns.begin(), result.frequent_nouns.end());

  for (const auto& record : inputs.triplets) {
    auto image = inputs.coco.images.find(record.image_id);
    if (image == inputs.coco.images.end()) {
      result.unresolved_records.push_back(record.id);
      continue;
    }
    std::vector<std::string> nouns = ExtractNouns(record.question, frequent);
    for (const auto& answer : record.answers) {
      auto more = ExtractNouns(answer.text, frequent);
      nouns.insert(nouns.end(), more.begin(), more.end());
    }
    auto more = ExtractNouns(record.explanation, frequent);
    nouns.insert(nouns.end(), more.begin(), more.end());

    CategoryMatch match = MapToCategories(nouns, inputs.category_map);
    result.unmapped_nouns.insert(match.unmapped.begin(), match.unmapped.end());
    result.queue.push_back(MakeReviewItem(
        record, image->second, MatchBoxes(record, inputs.coco, match.categories)));
  }
  return result;
}

DatasetStats ComputeDatasetStats(std::span<const RationaleSample> samples) {
  DatasetStats stats;
  std::set<std::string> images;
  for (const auto& s : samples) {
    images.insert(s.image_id);
    ++stats.num_qa_pairs;
    if (!s.textual_rationale.empty()) ++stats.num_textual_rationales;
    stats.num_visual_rationales += s.visual_rationale.size();
  }
  stats.num_images = images.size();
  return stats;
}

}  // namespace rbench
