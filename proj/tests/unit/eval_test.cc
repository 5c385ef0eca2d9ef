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

#include <cmath>
#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "rbench/error.h"
#include "rbench/serialization.h"

namespace rbench {
namespace {

using nlohmann::json;
using testing::FixturePath;
using testing::TempDir;

// Serves (cos, sqrt(1 - cos^2)) for predictions and (1, 0) for references.
class FixedCosineProvider : public EmbeddingProvider {
 public:
  explicit FixedCosineProvider(double cos) : cos_(cos) {}
  EmbeddingMap Embed(std::span<const TextItem> items) override {
    EmbeddingMap out;
    for (const auto& item : items) {
      const bool pred = item.id.ends_with(":pred");
      out.insert_or_assign(item.id, pred ? EmbeddingVector({cos_, std::sqrt(1 - cos_ * cos_)})
                                         : EmbeddingVector({1.0, 0.0}));
    }
    return out;
  }

 private:
  double cos_;
};

RationaleSample Sample(const std::string& id, std::vector<BoundingBox> boxes,
                       const std::string& text = "a dog runs on the grass") {
  RationaleSample s;
  s.id = id;
  s.image_id = id;
  s.question = "q";
  s.answers = {{"a", 1.0}};
  s.textual_rationale = text;
  s.visual_rationale = std::move(boxes);
  for (std::size_t k = 0; k < s.visual_rationale.size(); ++k) {
    s.provenance.push_back({static_cast<std::int64_t>(k), "dog", BoxOrigin::kMatched});
  }
  s.no_vr = s.visual_rationale.empty();
  return s;
}

TEST(EvaluateTest, AblationRowThroughStubs) {
  std::vector<BoundingBox> gts;
  for (int i = 0; i < 10000; ++i) gts.emplace_back(2.0 * (i % 100), 2.0 * (i / 100), 1, 1);
  const std::vector<RationaleSample> dataset{Sample("pjx", gts)};
  Prediction pred{"pjx", {}, "a dog runs on the grass"};
  for (int i = 0; i < 3843; ++i) pred.boxes.emplace_back(gts[i], 0.9);
  FixedCosineProvider stub(0.6832);
  EvalOptions opts;
  opts.metrics = {Metric::kAp, Metric::kCosGte, Metric::kVts};
  const MetricReport r = Evaluate(dataset, std::vector{pred}, opts, &stub);
  const json j = r.ToJson();
  EXPECT_EQ(j["metrics"]["ap"], 38.43);
  EXPECT_EQ(j["metrics"]["cos_gte"], 68.32);
  EXPECT_EQ(j["metrics"]["vts"], 49.19);
  EXPECT_NEAR(j["metrics"]["vts_arith"].get<double>(), 53.375, 0.0051);
  EXPECT_EQ(j["metrics"]["vts_prod"], 26.26);
}

TEST(EvaluateTest, EmptyMetricsIsConfigError) {
  const std::vector<RationaleSample> dataset{Sample("a", {BoundingBox(0, 0, 1, 1)})};
  EvalOptions opts;
  opts.metrics.clear();
  EXPECT_THROW(Evaluate(dataset, std::vector<Prediction>{}, opts, nullptr), ConfigError);
}

TEST(EvaluateTest, CosineNeedsProvider) {
  const std::vector<RationaleSample> dataset{Sample("a", {BoundingBox(0, 0, 1, 1)})};
  EvalOptions opts;
  opts.metrics = {Metric::kCosGte};
  EXPECT_THROW(Evaluate(dataset, std::vector<Prediction>{}, opts, nullptr), ConfigError);
}

TEST(EvaluateTest, UnknownPredictionIdsAreListed) {
  const std::vector<RationaleSample> dataset{Sample("a", {BoundingBox(0, 0, 1, 1)})};
  std::vector<Prediction> preds;
  for (int i = 0; i < 12; ++i) preds.push_back({"ghost" + std::to_string(i), {}, std::nullopt});
  EvalOptions opts;
  opts.metrics = {Metric::kAp};
  try {
    Evaluate(dataset, preds, opts, nullptr);
    FAIL();
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("ghost0"), std::string::npos);
    EXPECT_NE(msg.find("ghost9"), std::string::npos);
    EXPECT_EQ(msg.find("ghost10"), std::string::npos);
  }
}

TEST(EvaluateTest, MissingEmbeddingNamesTheId) {
  const std::vector<RationaleSample> dataset{Sample("a", {BoundingBox(0, 0, 1, 1)})};
  EmbeddingMap m;
  m.emplace("a:gt", EmbeddingVector({1.0}));
  FileEmbeddingProvider provider(std::move(m));
  EvalOptions opts;
  opts.metrics = {Metric::kCosGte};
  try {
    Evaluate(dataset, std::vector<Prediction>{{"a", {}, "text"}}, opts, &provider);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("a:pred"), std::string::npos);
  }
}

TEST(EvaluateTest, MissingPredictionScoresAsEmptyWithWarning) {
  const std::vector<RationaleSample> dataset{Sample("a", {BoundingBox(0, 0, 4, 4)}),
                                             Sample("b", {BoundingBox(0, 0, 4, 4)})};
  EvalOptions opts;
  opts.metrics = {Metric::kAp, Metric::kRougeL};
  const MetricReport r =
      Evaluate(dataset, std::vector<Prediction>{{"a", {{BoundingBox(0, 0, 4, 4), 1.0}},
                                                 "a dog runs on the grass"}},
               opts, nullptr);
  EXPECT_DOUBLE_EQ(r.values.at(Metric::kAp), 0.5);
  EXPECT_DOUBLE_EQ(r.values.at(Metric::kRougeL), 0.5);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_FALSE(r.per_sample[1].has_prediction);
}

TEST(EvaluateTest, ClampedCosineIsReported) {
  const std::vector<RationaleSample> dataset{Sample("a", {BoundingBox(0, 0, 4, 4)})};
  FixedCosineProvider stub(-0.3);
  EvalOptions opts;
  opts.metrics = {Metric::kCosGte, Metric::kVts};
  const MetricReport r = Evaluate(
      dataset, std::vector<Prediction>{{"a", {{BoundingBox(0, 0, 4, 4), 1.0}}, "x"}}, opts, &stub);
  EXPECT_EQ(r.values.at(Metric::kCosGte), 0.0);
  EXPECT_EQ(r.values.at(Metric::kVts), 0.0);
  EXPECT_NEAR(*r.per_sample[0].cos_raw, -0.3, 1e-12);
  bool mentioned = false;
  for (const auto& w : r.warnings) mentioned |= w.find("clamp") != std::string::npos;
  EXPECT_TRUE(mentioned);
}

TEST(EvaluateTest, PerSampleFusionFlag) {
  const std::vector<RationaleSample> dataset{Sample("a", {BoundingBox(0, 0, 4, 4)}),
                                             Sample("b", {BoundingBox(0, 0, 4, 4)})};
  FixedCosineProvider stub(0.5);
  const std::vector<Prediction> preds{{"a", {{BoundingBox(0, 0, 4, 4), 1.0}}, "x"},
                                      {"b", {}, "x"}};
  EvalOptions opts;
  opts.metrics = {Metric::kVts};
  const double global = Evaluate(dataset, preds, opts, &stub).values.at(Metric::kVts);
  EXPECT_NEAR(global, 2 * 0.5 * 0.5 / (0.5 + 0.5), 1e-12);
  opts.per_sample_vts = true;
  const double per_sample = Evaluate(dataset, preds, opts, &stub).values.at(Metric::kVts);
  EXPECT_NEAR(per_sample, (2 * 0.5 * 1.0 / 1.5 + 0.0) / 2, 1e-12);
}

TEST(RunEvalTest, PerfectionFixture) {
  TempDir out;
  RunConfig config = LoadRunConfig(FixturePath("eval/config_perfect.json"));
  config.output_dir = out.path();
  RunEval(config);
  const json report = ReadJsonFile(out / "report.json");
  EXPECT_EQ(report["metrics"]["ap"], 100.0);
  EXPECT_EQ(report["metrics"]["cos_gte"], 100.0);
  EXPECT_EQ(report["metrics"]["vts"], 100.0);
  EXPECT_EQ(report["metrics"]["bleu4"], 100.0);
  EXPECT_EQ(report["metrics"]["rouge_l"], 100.0);
  EXPECT_EQ(report["counts"]["samples"], 16);
  const std::string table = ReadTextFile(out / "report.txt");
  EXPECT_NE(table.find("100.00"), std::string::npos);
}

TEST(RunEvalTest, ReportsAreDeterministicAndInputsUntouched) {
  const auto cfg_path = FixturePath("eval/config_perfect.json");
  const std::string before = ReadTextFile(FixturePath("eval/predictions_perfect.jsonl"));
  TempDir a;
  TempDir b;
  RunConfig config = LoadRunConfig(cfg_path);
  config.output_dir = a.path();
  RunEval(config);
  config.output_dir = b.path();
  RunEval(config);
  auto strip = [](json j) {
    j["config"].erase("output_dir");
    return j.dump();
  };
  EXPECT_EQ(strip(ReadJsonFile(a / "report.json")), strip(ReadJsonFile(b / "report.json")));
  EXPECT_EQ(ReadTextFile(FixturePath("eval/predictions_perfect.jsonl")), before);
}

TEST(RunEvalTest, ReportKeyOrder) {
  TempDir out;
  RunConfig config = LoadRunConfig(FixturePath("eval/config_perfect.json"));
  config.output_dir = out.path();
  RunEval(config);
  const std::string text = ReadTextFile(out / "report.json");
  std::size_t last = 0;
  for (const char* key : {"\"toolkit\"", "\"version\"", "\"metrics\"", "\"raw\"", "\"counts\"",
                          "\"notes\"", "\"warnings\"", "\"config\"", "\"per_sample\""}) {
    const auto pos = text.find(key);
    ASSERT_NE(pos, std::string::npos) << key;
    EXPECT_GT(pos, last) << key;
    last = pos;
  }
}

TEST(ConfigTest, ParsingAndResolution) {
  TempDir dir;
  std::ofstream(dir / "c.json") << R"({"dataset": "d.jsonl", "predictions": "/abs/p.jsonl",
      "metrics": "ap,vts", "iou_threshold": 0.7})";
  const RunConfig c = LoadRunConfig(dir / "c.json");
  EXPECT_EQ(c.dataset, dir / "d.jsonl");
  EXPECT_EQ(c.predictions, std::filesystem::path("/abs/p.jsonl"));
  EXPECT_EQ(c.metrics, (std::vector<Metric>{Metric::kAp, Metric::kVts}));
  EXPECT_DOUBLE_EQ(c.iou_threshold, 0.7);
}

TEST(ConfigTest, Errors) {
  EXPECT_THROW(RunConfigFromJson({{"datset", "x"}}, "."), ConfigError);
  EXPECT_THROW(RunConfigFromJson({{"metrics", {"bleu5"}}}, "."), ConfigError);
  EXPECT_THROW(RunConfigFromJson({{"iou_threshold", "high"}}, "."), ConfigError);
  EXPECT_THROW(ParseMetricList("ap,cider-d"), ConfigError);
  EXPECT_EQ(ParseMetricList(" ap ,,vts,ap").size(), 2u);
  EXPECT_TRUE(ParseMetricList("").empty());
}

TEST(ConfigTest, EnvironmentFillsEmbedUrl) {
  ::setenv("RB_EMBED_URL", "http://127.0.0.1:9/embed", 1);
  RunConfig c;
  ApplyEnvironment(c);
  EXPECT_EQ(c.embed_url, "http://127.0.0.1:9/embed");
  c.embed_url = "http://flag/embed";
  ApplyEnvironment(c);
  EXPECT_EQ(c.embed_url, "http://flag/embed");
  ::unsetenv("RB_EMBED_URL");
}

TEST(ConfigTest, MetricNamesRoundTrip) {
  for (Metric m : AllMetrics()) EXPECT_EQ(ParseMetric(MetricName(m)), m);
  EXPECT_EQ(AllMetrics().size(), 7u);
}

}  // namespace
}  // namespace rbench
