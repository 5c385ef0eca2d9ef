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

#include "rbench/eval.h"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>

#include "rbench/error.h"
#include "rbench/serialization.h"
#include "rbench/text_metrics.h"

namespace rbench {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

bool Wants(const EvalOptions& options, Metric m) {
  return std::find(options.metrics.begin(), options.metrics.end(), m) !=
         options.metrics.end();
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

Prediction PredictionFromJson(const json& node) {
  Prediction p;
  const json& id = node.at("id");
  p.id = id.is_string() ? id.get<std::string>() : std::to_string(id.get<std::int64_t>());
  if (node.contains("boxes")) {
    for (const auto& b : node.at("boxes")) {
      p.boxes.emplace_back(BoxFromJson(b), b.value("score", 1.0));
    }
  }
  if (node.contains("textual_rationale") && !node.at("textual_rationale").is_null()) {
    p.textual_rationale = node.at("textual_rationale").get<std::string>();
  }
  return p;
}

std::vector<Prediction> LoadPredictions(const std::filesystem::path& path) {
  std::vector<Prediction> out;
  ForEachJsonLine(path, [&](const json& j) { out.push_back(PredictionFromJson(j)); });
  return out;
}

std::string PredictionTextId(const std::string& sample_id) { return sample_id + ":pred"; }
std::string ReferenceTextId(const std::string& sample_id) { return sample_id + ":gt"; }

MetricReport Evaluate(std::span<const RationaleSample> dataset,
                      std::span<const Prediction> predictions,
                      const EvalOptions& options, EmbeddingProvider* provider) {
  if (options.metrics.empty()) throw ConfigError("no metrics requested");
  if (dataset.empty()) throw Error("dataset has no samples");
  if (!(options.iou_threshold > 0.0 && options.iou_threshold <= 1.0)) {
    throw ConfigError("iou threshold must be in (0, 1]");
  }

  std::map<std::string, std::size_t> sample_index;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (!sample_index.emplace(dataset[i].id, i).second) {
      throw Error("duplicate dataset id '" + dataset[i].id + "'");
    }
  }
  std::map<std::string, const Prediction*> by_id;
  std::vector<std::string> unknown;
  for (const auto& p : predictions) {
    if (!sample_index.contains(p.id)) {
      unknown.push_back(p.id);
      continue;
    }
    if (!by_id.emplace(p.id, &p).second) throw Error("duplicate prediction id '" + p.id + "'");
  }
  if (!unknown.empty()) {
    std::string msg = std::to_string(unknown.size()) + " prediction id(s) not in the dataset:";
    for (std::size_t i = 0; i < unknown.size() && i < 10; ++i) msg += " " + unknown[i];
    if (unknown.size() > 10) msg += " ...";
    throw Error(msg);
  }

  const bool want_vts = Wants(options, Metric::kVts);
  const bool need_ap = Wants(options, Metric::kAp) || want_vts;
  const bool need_cos = Wants(options, Metric::kCosGte) || want_vts;
  const bool need_text = Wants(options, Metric::kBleu4) || Wants(options, Metric::kRougeL) ||
                         Wants(options, Metric::kCider) || Wants(options, Metric::kMeteor);
  if (need_cos && provider == nullptr) {
    throw ConfigError("cos_gte/vts need an embedding provider (--embed-url, RB_EMBED_URL "
                      "or an embeddings file)");
  }

  MetricReport report;
  report.metrics = options.metrics;
  report.num_samples = dataset.size();
  report.num_predictions = predictions.size();
  report.per_sample.resize(dataset.size());

  std::size_t missing_predictions = 0;
  std::size_t missing_text = 0;
  std::vector<std::string> candidate_texts(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    auto& scores = report.per_sample[i];
    scores.id = dataset[i].id;
    auto it = by_id.find(dataset[i].id);
    scores.has_prediction = it != by_id.end();
    if (!scores.has_prediction) {
      ++missing_predictions;
    } else if (it->second->textual_rationale) {
      candidate_texts[i] = *it->second->textual_rationale;
    } else if (need_text || need_cos) {
      ++missing_text;
    }
  }
  if (missing_predictions > 0) {
    report.warnings.push_back(std::to_string(missing_predictions) +
                              " dataset sample(s) have no prediction and were scored as empty");
  }
  if (missing_text > 0) {
    report.warnings.push_back(std::to_string(missing_text) +
                              " prediction(s) carry no textual_rationale; scored as empty text");
  }

  if (need_text) {
    std::vector<TextPair> corpus;
    corpus.reserve(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      corpus.push_back({Tokenize(candidate_texts[i]), {Tokenize(dataset[i].textual_rationale)}});
    }
    if (Wants(options, Metric::kBleu4)) {
      report.values[Metric::kBleu4] =
          Bleu4(corpus, BleuOptions{options.bleu_smoothing}).score;
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        report.per_sample[i].bleu4 =
            Bleu4(std::span<const TextPair>(&corpus[i], 1), BleuOptions{options.bleu_smoothing})
                .score;
      }
    }
    if (Wants(options, Metric::kRougeL)) {
      std::vector<double> v;
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        v.push_back(RougeLMulti(corpus[i]));
        report.per_sample[i].rouge_l = v.back();
      }
      report.values[Metric::kRougeL] = Mean(v);
    }
    if (Wants(options, Metric::kCider)) {
      const CiderResult cider = Cider(corpus);
      for (std::size_t i = 0; i < corpus.size(); ++i) report.per_sample[i].cider = cider.per_item[i];
      report.values[Metric::kCider] = cider.mean;
      if (cider.degenerate_corpus) {
        report.warnings.push_back("cider: single-item corpus, idf of shared n-grams is 0");
      }
    }
    if (Wants(options, Metric::kMeteor)) {
      std::vector<double> v;
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        v.push_back(MeteorMulti(corpus[i]));
        report.per_sample[i].meteor = v.back();
      }
      report.values[Metric::kMeteor] = Mean(v);
    }
  }

  double dataset_ap = 0.0;
  if (need_ap) {
    std::vector<SampleDetections> samples(dataset.size());
    std::size_t no_gt_with_dets = 0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      samples[i].gts = dataset[i].visual_rationale;
      if (auto it = by_id.find(dataset[i].id); it != by_id.end()) {
        samples[i].dets = it->second->boxes;
      }
      const ApResult sample_ap = SampleAp(samples[i], options.iou_threshold);
      report.per_sample[i].ap = sample_ap.ap;
      if (sample_ap.no_ground_truth) ++no_gt_with_dets;
    }
    if (no_gt_with_dets > 0) {
      report.warnings.push_back(std::to_string(no_gt_with_dets) +
                                " sample(s) have detections but no ground-truth boxes "
                                "(per-sample AP reported as 0)");
    }
    if (!samples.empty()) {
      const ApResult pooled = DatasetAp(samples, options.iou_threshold);
      dataset_ap = pooled.ap;
      report.num_gt_boxes = pooled.num_gt;
      report.num_detections = pooled.num_dets;
      if (pooled.no_ground_truth) {
        report.warnings.push_back("ap: no ground-truth boxes in the dataset; AP evaluated as 0");
      }
    }
    if (Wants(options, Metric::kAp)) report.values[Metric::kAp] = dataset_ap;
  }

  double mean_cos = 0.0;
  if (need_cos) {
    std::vector<TextItem> items;
    items.reserve(2 * dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      items.push_back({PredictionTextId(dataset[i].id), candidate_texts[i]});
      items.push_back({ReferenceTextId(dataset[i].id), dataset[i].textual_rationale});
    }
    const EmbeddingMap vectors = provider->Embed(items);
    std::vector<double> cos;
    std::size_t clamped = 0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      const auto& pred = vectors.at(PredictionTextId(dataset[i].id));
      const auto& gt = vectors.at(ReferenceTextId(dataset[i].id));
      const double raw = Cosine(pred, gt);
      const double value = ClampSimilarity(raw);
      if (raw < 0.0) ++clamped;
      report.per_sample[i].cos_raw = raw;
      report.per_sample[i].cos_gte = value;
      cos.push_back(value);
    }
    mean_cos = Mean(cos);
    if (clamped > 0) {
      report.warnings.push_back("cos_gte: " + std::to_string(clamped) +
                                " negative cosine(s) clamped to 0");
    }
    if (Wants(options, Metric::kCosGte)) report.values[Metric::kCosGte] = mean_cos;
  }

  if (want_vts) {
    VtsReport fusion = FuseVts(VtsInputs(mean_cos, dataset_ap));
    std::vector<double> per_sample_vts;
    for (auto& s : report.per_sample) {
      s.vts = Vts(VtsInputs(s.cos_gte.value_or(0.0), s.ap.value_or(0.0)));
      per_sample_vts.push_back(*s.vts);
    }
    if (options.per_sample_vts) fusion.vts = Mean(per_sample_vts);
    if (fusion.degenerate) {
      report.warnings.push_back("vts: both inputs are 0; reported as 0");
    }
    report.values[Metric::kVts] = fusion.vts;
    report.fusion = fusion;
  }
  return report;
}

ordered_json MetricReport::ToJson() const {
  ordered_json percent = ordered_json::object();
  ordered_json raw = ordered_json::object();
  for (Metric m : metrics) {
    const std::string name(MetricName(m));
    auto it = values.find(m);
    if (it == values.end()) continue;
    percent[name] = ToPercent(it->second);
    raw[name] = it->second;
    if (m == Metric::kVts && fusion) {
      percent["vts_arith"] = ToPercent(fusion->arith);
      percent["vts_prod"] = ToPercent(fusion->prod);
      raw["vts_arith"] = fusion->arith;
      raw["vts_prod"] = fusion->prod;
      if (!values.contains(Metric::kCosGte)) raw["vts_cos_input"] = fusion->cos_sim;
      if (!values.contains(Metric::kAp)) raw["vts_ap_input"] = fusion->ap;
    }
  }

  ordered_json out;
  out["toolkit"] = std::string(kToolkitName);
  out["version"] = std::string(kToolkitVersion);
  out["metrics"] = std::move(percent);
  out["raw"] = std::move(raw);
  out["counts"] = {{"samples", num_samples},
                   {"predictions", num_predictions},
                   {"gt_boxes", num_gt_boxes},
                   {"detections", num_detections}};
  out["notes"] = {"spice: not implemented",
                  "meteor: exact and Porter-stem stages only, alpha=0.9 beta=3.0 gamma=0.5",
                  "cider: plain CIDEr on the x10 scale",
                  "cos_gte: cosine clamped to [0, 1] before fusion",
                  "ap: single category, all-point interpolation"};
  out["warnings"] = warnings;
  out["config"] = config;
  ordered_json samples = ordered_json::array();
  for (const auto& s : per_sample) {
    ordered_json row;
    row["id"] = s.id;
    row["has_prediction"] = s.has_prediction;
    if (s.bleu4) row["bleu4"] = *s.bleu4;
    if (s.rouge_l) row["rouge_l"] = *s.rouge_l;
    if (s.cider) row["cider"] = *s.cider;
    if (s.meteor) row["meteor"] = *s.meteor;
    if (s.ap) row["ap"] = *s.ap;
    if (s.cos_raw) row["cos_raw"] = *s.cos_raw;
    if (s.cos_gte) row["cos_gte"] = *s.cos_gte;
    if (s.vts) row["vts"] = *s.vts;
    samples.push_back(std::move(row));
  }
  out["per_sample"] = std::move(samples);
  return out;
}

MetricReport RunEval(const RunConfig& config, EmbeddingProvider* provider) {
  if (config.metrics.empty()) throw ConfigError("no metrics requested");
  const auto dataset = LoadDataset(config.dataset);
  const auto predictions = LoadPredictions(config.predictions);

  std::unique_ptr<EmbeddingProvider> owned;
  if (provider == nullptr) {
    const bool need_cos =
        std::any_of(config.metrics.begin(), config.metrics.end(),
                    [](Metric m) { return m == Metric::kCosGte || m == Metric::kVts; });
    if (need_cos && config.embed_url) {
      RemoteEmbeddingOptions remote;
      remote.url = *config.embed_url;
      remote.batch_size = config.embed_batch_size;
      remote.cache_dir = config.embed_cache_dir
                             ? *config.embed_cache_dir
                             : config.output_dir / "embedding_cache";
      owned = std::make_unique<RemoteEmbeddingProvider>(remote);
    } else if (need_cos && config.embeddings) {
      owned = std::make_unique<FileEmbeddingProvider>(
          FileEmbeddingProvider::FromFile(*config.embeddings));
    }
    provider = owned.get();
  }

  EvalOptions options;
  options.metrics = config.metrics;
  options.iou_threshold = config.iou_threshold;
  options.per_sample_vts = config.per_sample_vts;
  options.bleu_smoothing = config.bleu_smoothing;
  MetricReport report = Evaluate(dataset, predictions, options, provider);
  report.config = ConfigToJson(config);

  const ordered_json j = report.ToJson();
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) throw IoError("cannot create " + config.output_dir.string() + ": " + ec.message());
  WriteTextFile(config.output_dir / "report.json", j.dump(2) + "\n");
  WriteTextFile(config.output_dir / "report.txt", RenderReportTable(json::parse(j.dump())));
  return report;
}

std::string RenderReportTable(const json& report) {
  std::ostringstream out;
  out << report.value("toolkit", std::string(kToolkitName)) << " "
      << report.value("version", std::string()) << "\n";
  const json empty = json::object();
  const json& metrics = report.contains("metrics") ? report.at("metrics") : empty;
  const json& raw = report.contains("raw") ? report.at("raw") : empty;
  char line[160];
  std::snprintf(line, sizeof(line), "%-12s %10s %12s\n", "metric", "percent", "raw");
  out << line;
  for (const auto& [name, value] : metrics.items()) {
    const std::string raw_text =
        raw.contains(name) ? Fixed(raw.at(name).get<double>(), 6) : std::string("-");
    std::snprintf(line, sizeof(line), "%-12s %10s %12s\n", name.c_str(),
                  Fixed(value.get<double>(), 2).c_str(), raw_text.c_str());
    out << line;
  }
  if (report.contains("counts")) {
    const auto& c = report.at("counts");
    out << "samples=" << c.value("samples", 0) << " predictions=" << c.value("predictions", 0)
        << " gt_boxes=" << c.value("gt_boxes", 0) << " detections=" << c.value("detections", 0)
        << "\n";
  }
  if (report.contains("warnings")) {
    for (const auto& w : report.at("warnings")) out << "warning: " << w.get<std::string>() << "\n";
  }
  return out.str();
}

}  // namespace rbench
