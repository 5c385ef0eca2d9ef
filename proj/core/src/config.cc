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

#include "rbench/config.h"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "rbench/error.h"
#include "rbench/serialization.h"

namespace rbench {
namespace {

constexpr std::pair<Metric, std::string_view> kMetricNames[] = {
    {Metric::kBleu4, "bleu4"}, {Metric::kRougeL, "rouge_l"}, {Metric::kCider, "cider"},
    {Metric::kMeteor, "meteor"}, {Metric::kAp, "ap"},          {Metric::kCosGte, "cos_gte"},
    {Metric::kVts, "vts"},
};

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view MetricName(Metric metric) {
  for (const auto& [m, name] : kMetricNames) {
    if (m == metric) return name;
  }
  return "unknown";
}

Metric ParseMetric(std::string_view name) {
  for (const auto& [m, n] : kMetricNames) {
    if (n == name) return m;
  }
  throw ConfigError("unknown metric '" + std::string(name) +
                    "' (expected bleu4, rouge_l, cider, meteor, ap, cos_gte or vts)");
}

std::vector<Metric> ParseMetricList(std::string_view list) {
  std::vector<Metric> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto piece = Trim(list.substr(start, comma == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : comma - start));
    if (!piece.empty()) {
      const Metric m = ParseMetric(piece);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<Metric> AllMetrics() {
  std::vector<Metric> out;
  for (const auto& [m, name] : kMetricNames) out.push_back(m);
  return out;
}

RunConfig RunConfigFromJson(const nlohmann::json& node,
                            const std::filesystem::path& base_dir) {
  if (!node.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> kKeys = {
      "dataset", "predictions", "embeddings", "triplets", "coco", "category_map",
      "lexicon", "min_noun_count", "iou_threshold", "metrics", "per_sample_vts",
      "bleu_smoothing", "embed_url", "embed_cache_dir", "embed_batch_size", "output_dir"};
  for (const auto& [key, value] : node.items()) {
    if (!kKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  RunConfig c;
  try {
    auto path_field = [&](const char* key, std::filesystem::path& out) {
      if (node.contains(key)) out = Resolve(base_dir, node.at(key).get<std::string>());
    };
    path_field("dataset", c.dataset);
    path_field("predictions", c.predictions);
    path_field("triplets", c.triplets);
    path_field("coco", c.coco);
    path_field("category_map", c.category_map);
    path_field("lexicon", c.lexicon);
    path_field("output_dir", c.output_dir);
    if (node.contains("embeddings")) {
      c.embeddings = Resolve(base_dir, node.at("embeddings").get<std::string>());
    }
    if (node.contains("embed_cache_dir")) {
      c.embed_cache_dir = Resolve(base_dir, node.at("embed_cache_dir").get<std::string>());
    }
    if (node.contains("embed_url")) c.embed_url = node.at("embed_url").get<std::string>();
    c.min_noun_count = node.value("min_noun_count", c.min_noun_count);
    c.iou_threshold = node.value("iou_threshold", c.iou_threshold);
    c.per_sample_vts = node.value("per_sample_vts", c.per_sample_vts);
    c.bleu_smoothing = node.value("bleu_smoothing", c.bleu_smoothing);
    c.embed_batch_size = node.value("embed_batch_size", c.embed_batch_size);
    if (node.contains("metrics")) {
      const auto& m = node.at("metrics");
      c.metrics.clear();
      if (m.is_string()) {
        c.metrics = ParseMetricList(m.get<std::string>());
      } else {
        for (const auto& name : m) {
          const Metric metric = ParseMetric(name.get<std::string>());
          if (std::find(c.metrics.begin(), c.metrics.end(), metric) == c.metrics.end()) {
            c.metrics.push_back(metric);
          }
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  nlohmann::json node;
  try {
    node = ReadJsonFile(path);
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
  return RunConfigFromJson(node, path.parent_path());
}

void ApplyEnvironment(RunConfig& config) {
  if (config.embed_url) return;
  if (const char* url = std::getenv("RB_EMBED_URL"); url != nullptr && *url != '\0') {
    config.embed_url = url;
  }
}

nlohmann::ordered_json ConfigToJson(const RunConfig& c) {
  nlohmann::ordered_json metrics = nlohmann::ordered_json::array();
  for (Metric m : c.metrics) metrics.push_back(std::string(MetricName(m)));
  nlohmann::ordered_json out;
  out["dataset"] = c.dataset.string();
  out["predictions"] = c.predictions.string();
  out["embeddings"] = c.embeddings ? nlohmann::ordered_json(c.embeddings->string())
                                   : nlohmann::ordered_json();
  out["embed_url"] = c.embed_url ? nlohmann::ordered_json(*c.embed_url) : nlohmann::ordered_json();
  out["iou_threshold"] = c.iou_threshold;
  out["metrics"] = std::move(metrics);
  out["per_sample_vts"] = c.per_sample_vts;
  out["bleu_smoothing"] = c.bleu_smoothing;
  return out;
}

}  // namespace rbench
