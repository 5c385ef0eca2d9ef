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

#include "rbench/serialization.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "rbench/error.h"

namespace rbench {
namespace {

using nlohmann::json;

std::string IdString(const json& node) {
  if (node.is_string()) return node.get<std::string>();
  if (node.is_number_integer()) return std::to_string(node.get<std::int64_t>());
  throw ParseError("id must be a string or an integer");
}

std::string RequireString(const json& node, const char* key) {
  const json& v = node.at(key);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

double RequireNumber(const json& node, const char* key) {
  const json& v = node.at(key);
  if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<Answer> AnswersFromJson(const json& node) {
  std::vector<Answer> answers;
  for (const auto& a : node) {
    if (a.is_string()) {
      answers.push_back({a.get<std::string>(), 1.0});
      continue;
    }
    Answer answer{RequireString(a, "text"), a.contains("score") ? RequireNumber(a, "score") : 1.0};
    if (answer.score < 0.0 || answer.score > 1.0) {
      throw ParseError("answer score must be in [0, 1]");
    }
    answers.push_back(std::move(answer));
  }
  return answers;
}

OrderedJson AnswersToJson(const std::vector<Answer>& answers) {
  OrderedJson out = OrderedJson::array();
  for (const auto& a : answers) out.push_back({{"text", a.text}, {"score", a.score}});
  return out;
}

const char* OriginName(BoxOrigin origin) {
  return origin == BoxOrigin::kMatched ? "matched" : "human-added";
}

BoxOrigin ParseOrigin(const std::string& text) {
  if (text == "matched") return BoxOrigin::kMatched;
  if (text == "human-added") return BoxOrigin::kHumanAdded;
  throw ParseError("unknown box origin '" + text + "'");
}

std::ofstream OpenForWrite(const std::filesystem::path& path, std::ios::openmode mode) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

OrderedJson BoxToJson(const BoundingBox& box) {
  return {{"x", box.x()}, {"y", box.y()}, {"w", box.w()}, {"h", box.h()}};
}

BoundingBox BoxFromJson(const json& node) {
  return BoundingBox(RequireNumber(node, "x"), RequireNumber(node, "y"),
                     RequireNumber(node, "w"), RequireNumber(node, "h"));
}

OrderedJson ToJson(const TripletRecord& record) {
  return {{"id", record.id},
          {"image_id", record.image_id},
          {"question", record.question},
          {"answers", AnswersToJson(record.answers)},
          {"explanation", record.explanation}};
}

TripletRecord TripletFromJson(const json& node) {
  TripletRecord record;
  record.id = IdString(node.at("id"));
  record.image_id = IdString(node.at("image_id"));
  record.question = RequireString(node, "question");
  record.answers = AnswersFromJson(node.at("answers"));
  record.explanation = RequireString(node, "explanation");
  if (record.question.empty()) throw ParseError("triplet '" + record.id + "' has an empty question");
  if (record.explanation.empty()) {
    throw ParseError("triplet '" + record.id + "' has an empty explanation");
  }
  if (record.answers.empty()) throw ParseError("triplet '" + record.id + "' has no answers");
  return record;
}

OrderedJson ToJson(const ReviewDecision& decision) {
  OrderedJson added = OrderedJson::array();
  for (const auto& box : decision.added) added.push_back(BoxToJson(box));
  return {{"id", decision.id},
          {"removed", decision.removed},
          {"added", std::move(added)},
          {"status", ToString(decision.status)},
          {"version", decision.version}};
}

ReviewDecision DecisionFromJson(const json& node) {
  ReviewDecision d;
  d.id = IdString(node.at("id"));
  if (node.contains("removed")) {
    for (const auto& idx : node.at("removed")) {
      if (!idx.is_number_integer()) throw ParseError("removed indices must be integers");
      d.removed.push_back(idx.get<int>());
    }
  }
  if (node.contains("added")) {
    for (const auto& box : node.at("added")) d.added.push_back(BoxFromJson(box));
  }
  d.status = ParseReviewStatus(RequireString(node, "status"));
  const json& version = node.at("version");
  if (!version.is_number_integer()) throw ParseError("version must be an integer");
  d.version = version.get<std::int64_t>();
  return d;
}

OrderedJson ToJson(const ReviewItem& item) {
  OrderedJson candidates = OrderedJson::array();
  for (const auto& c : item.candidates) {
    candidates.push_back({{"annotation_id", c.annotation_id},
                          {"category", c.category},
                          {"x", c.box.x()},
                          {"y", c.box.y()},
                          {"w", c.box.w()},
                          {"h", c.box.h()}});
  }
  OrderedJson out = {{"id", item.id},
                     {"image_id", item.image_id},
                     {"image_path", item.image_path},
                     {"image_width", item.image_width},
                     {"image_height", item.image_height},
                     {"question", item.question},
                     {"answer", item.answer},
                     {"answers", AnswersToJson(item.answers)},
                     {"textual_rationale", item.textual_rationale},
                     {"candidates", std::move(candidates)},
                     {"status", ToString(item.status)},
                     {"version", item.version}};
  if (item.decision) out["decision"] = ToJson(*item.decision);
  return out;
}

ReviewItem ReviewItemFromJson(const json& node) {
  ReviewItem item;
  item.id = IdString(node.at("id"));
  item.image_id = IdString(node.at("image_id"));
  item.image_path = RequireString(node, "image_path");
  item.image_width = RequireNumber(node, "image_width");
  item.image_height = RequireNumber(node, "image_height");
  item.question = RequireString(node, "question");
  item.answer = RequireString(node, "answer");
  if (node.contains("answers")) item.answers = AnswersFromJson(node.at("answers"));
  item.textual_rationale = RequireString(node, "textual_rationale");
  for (const auto& c : node.at("candidates")) {
    item.candidates.push_back({c.at("annotation_id").get<std::int64_t>(),
                               RequireString(c, "category"), BoxFromJson(c)});
  }
  item.status = ParseReviewStatus(RequireString(node, "status"));
  item.version = node.value("version", std::int64_t{0});
  if (node.contains("decision")) item.decision = DecisionFromJson(node.at("decision"));
  return item;
}

OrderedJson ToJson(const RationaleSample& sample) {
  OrderedJson boxes = OrderedJson::array();
  for (const auto& b : sample.visual_rationale) boxes.push_back(BoxToJson(b));
  OrderedJson provenance = OrderedJson::array();
  for (const auto& p : sample.provenance) {
    OrderedJson entry;
    entry["annotation_id"] = p.annotation_id ? OrderedJson(*p.annotation_id) : OrderedJson();
    entry["source_category"] =
        p.source_category ? OrderedJson(*p.source_category) : OrderedJson();
    entry["origin"] = OriginName(p.origin);
    provenance.push_back(std::move(entry));
  }
  return {{"id", sample.id},
          {"image_id", sample.image_id},
          {"image_path", sample.image_path},
          {"question", sample.question},
          {"answers", AnswersToJson(sample.answers)},
          {"textual_rationale", sample.textual_rationale},
          {"visual_rationale", std::move(boxes)},
          {"provenance", std::move(provenance)},
          {"no_vr", sample.no_vr}};
}

RationaleSample RationaleSampleFromJson(const json& node) {
  RationaleSample s;
  s.id = IdString(node.at("id"));
  s.image_id = node.contains("image_id") ? IdString(node.at("image_id")) : "";
  s.image_path = node.value("image_path", "");
  s.question = node.value("question", "");
  if (node.contains("answers")) s.answers = AnswersFromJson(node.at("answers"));
  s.textual_rationale = RequireString(node, "textual_rationale");
  for (const auto& b : node.at("visual_rationale")) s.visual_rationale.push_back(BoxFromJson(b));
  if (node.contains("provenance")) {
    for (const auto& p : node.at("provenance")) {
      Provenance prov;
      if (p.contains("annotation_id") && !p.at("annotation_id").is_null()) {
        prov.annotation_id = p.at("annotation_id").get<std::int64_t>();
      }
      if (p.contains("source_category") && !p.at("source_category").is_null()) {
        prov.source_category = p.at("source_category").get<std::string>();
      }
      prov.origin = ParseOrigin(RequireString(p, "origin"));
      if (prov.origin == BoxOrigin::kMatched && !prov.annotation_id) {
        throw ParseError("matched box of sample '" + s.id + "' has no annotation id");
      }
      s.provenance.push_back(std::move(prov));
    }
  }
  s.no_vr = node.value("no_vr", false);
  if (s.visual_rationale.empty() && !s.no_vr) {
    throw ParseError("sample '" + s.id + "' has no boxes but is not flagged no_vr");
  }
  if (!s.provenance.empty() && s.provenance.size() != s.visual_rationale.size()) {
    throw ParseError("sample '" + s.id + "' provenance does not match its boxes");
  }
  return s;
}

CocoAnnotations CocoFromJson(const json& node) {
  CocoAnnotations coco;
  for (const auto& img : node.at("images")) {
    CocoImage image{RequireString(img, "file_name"), RequireNumber(img, "width"),
                    RequireNumber(img, "height")};
    coco.images.emplace(IdString(img.at("id")), std::move(image));
  }
  for (const auto& cat : node.at("categories")) {
    coco.categories.emplace(cat.at("id").get<std::int64_t>(), RequireString(cat, "name"));
  }
  for (const auto& ann : node.at("annotations")) {
    const auto ann_id = ann.at("id").get<std::int64_t>();
    const std::string image_id = IdString(ann.at("image_id"));
    const auto category_id = ann.at("category_id").get<std::int64_t>();
    const std::string where = "annotation " + std::to_string(ann_id);
    auto image = coco.images.find(image_id);
    if (image == coco.images.end()) {
      throw ParseError(where + " references unknown image " + image_id);
    }
    if (!coco.categories.contains(category_id)) {
      throw ParseError(where + " references unknown category " + std::to_string(category_id));
    }
    const json& bbox = ann.at("bbox");
    if (!bbox.is_array() || bbox.size() != 4) throw ParseError(where + ": bbox must have 4 numbers");
    try {
      BoundingBox box(bbox[0].get<double>(), bbox[1].get<double>(), bbox[2].get<double>(),
                      bbox[3].get<double>());
      if (!box.WithinImage(image->second.width, image->second.height)) {
        throw ParseError(where + " lies outside image " + image_id);
      }
      coco.boxes[image_id].push_back({ann_id, category_id, box});
    } catch (const InvalidArgument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  for (auto& [image_id, boxes] : coco.boxes) {
    std::stable_sort(boxes.begin(), boxes.end(), [](const CocoBox& a, const CocoBox& b) {
      return a.annotation_id < b.annotation_id;
    });
  }
  return coco;
}

void ForEachJsonLine(const std::filesystem::path& path,
                     const std::function<void(const json&)>& fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(json::parse(line));
    } catch (const std::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
}

void WriteTextFile(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out = OpenForWrite(tmp, std::ios::trunc | std::ios::binary);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

void WriteJsonLines(const std::filesystem::path& path, std::span<const OrderedJson> lines) {
  std::string content;
  for (const auto& line : lines) {
    content += line.dump();
    content += '\n';
  }
  WriteTextFile(path, content);
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json ReadJsonFile(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void AppendJsonLine(const std::filesystem::path& path, const OrderedJson& line) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::string text = line.dump() + "\n";
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw IoError("cannot open " + path.string() + " for append");
  const ssize_t written = ::write(fd, text.data(), text.size());
  const bool synced = ::fsync(fd) == 0;
  ::close(fd);
  if (written != static_cast<ssize_t>(text.size()) || !synced) {
    throw IoError("append to " + path.string() + " failed");
  }
}

std::vector<TripletRecord> LoadTriplets(const std::filesystem::path& path) {
  std::vector<TripletRecord> out;
  ForEachJsonLine(path, [&](const json& j) { out.push_back(TripletFromJson(j)); });
  return out;
}

CocoAnnotations LoadCoco(const std::filesystem::path& path) {
  try {
    return CocoFromJson(ReadJsonFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Lexicon LoadLexicon(const std::filesystem::path& path) {
  std::istringstream in(ReadTextFile(path));
  Lexicon lexicon;
  std::string line;
  while (std::getline(in, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    const auto end = line.find_last_not_of(" \t\r");
    std::string word = line.substr(begin, end - begin + 1);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    lexicon.insert(std::move(word));
  }
  return lexicon;
}

CategoryMap LoadCategoryMap(const std::filesystem::path& path) {
  const json node = ReadJsonFile(path);
  if (!node.is_object()) throw ParseError(path.string() + ": category map must be a JSON object");
  CategoryMap map;
  for (const auto& [noun, category] : node.items()) {
    if (!category.is_string()) {
      throw ParseError(path.string() + ": category for '" + noun + "' must be a string");
    }
    map.emplace(noun, category.get<std::string>());
  }
  return map;
}

std::vector<ReviewItem> LoadReviewQueue(const std::filesystem::path& path) {
  std::vector<ReviewItem> out;
  ForEachJsonLine(path, [&](const json& j) { out.push_back(ReviewItemFromJson(j)); });
  return out;
}

std::vector<ReviewDecision> LoadDecisions(const std::filesystem::path& path) {
  std::vector<ReviewDecision> out;
  if (!std::filesystem::exists(path)) return out;
  ForEachJsonLine(path, [&](const json& j) { out.push_back(DecisionFromJson(j)); });
  return out;
}

std::vector<RationaleSample> LoadDataset(const std::filesystem::path& path) {
  std::vector<RationaleSample> out;
  ForEachJsonLine(path, [&](const json& j) { out.push_back(RationaleSampleFromJson(j)); });
  return out;
}

std::size_t ExportReviewQueue(std::span<const ReviewItem> items,
                              const std::filesystem::path& path) {
  std::vector<OrderedJson> lines;
  lines.reserve(items.size());
  for (const auto& item : items) {
    ReviewItem pending = item;
    pending.status = ReviewStatus::kPending;
    pending.version = 0;
    pending.decision.reset();
    lines.push_back(ToJson(pending));
  }
  WriteJsonLines(path, lines);
  return lines.size();
}

std::size_t WriteDataset(std::span<const RationaleSample> samples,
                         const std::filesystem::path& path) {
  std::vector<OrderedJson> lines;
  lines.reserve(samples.size());
  for (const auto& s : samples) lines.push_back(ToJson(s));
  WriteJsonLines(path, lines);
  return lines.size();
}

}  // namespace rbench
