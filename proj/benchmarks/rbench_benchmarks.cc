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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "rbench/detection_eval.h"
#include "rbench/geometry.h"
#include "rbench/kernels.h"
#include "rbench/text_metrics.h"

namespace rbench {
namespace {

std::vector<BoundingBox> RandomBoxes(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> pos(0, 600);
  std::uniform_real_distribution<double> size(4, 120);
  std::vector<BoundingBox> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(pos(rng), pos(rng), size(rng), size(rng));
  return out;
}

void BM_Iou(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto boxes = RandomBoxes(rng, 1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Iou(boxes[i & 1023], boxes[(i * 7 + 3) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_Iou);

void BM_DatasetAp(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> score(0, 1);
  std::vector<SampleDetections> samples(static_cast<std::size_t>(state.range(0)));
  for (auto& s : samples) {
    s.gts = RandomBoxes(rng, 4);
    for (const auto& b : RandomBoxes(rng, 8)) s.dets.emplace_back(b, score(rng));
    for (const auto& g : s.gts) s.dets.emplace_back(g, score(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(DatasetAp(samples).ap);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DatasetAp)->Arg(100)->Arg(10000);

void BM_Cider(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<std::string> vocab;
  for (int i = 0; i < 500; ++i) vocab.push_back("w" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> word(0, vocab.size() - 1);
  auto sentence = [&] {
    TokenSequence s;
    for (int i = 0; i < 12; ++i) s.push_back(vocab[word(rng)]);
    return s;
  };
  std::vector<TextPair> corpus(static_cast<std::size_t>(state.range(0)));
  for (auto& p : corpus) p = {sentence(), {sentence()}};
  for (auto _ : state) benchmark::DoNotOptimize(Cider(corpus).mean);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Cider)->Arg(1000);

void BM_Attention(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  auto random = [&](std::size_t r, std::size_t c) {
    kernels::Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = g(rng);
    return m;
  };
  const auto q = random(n, 64);
  const auto k = random(n, 64);
  const auto v = random(n, 64);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::ScaledDotAttention(q, k, v, 64));
}
BENCHMARK(BM_Attention)->Arg(32)->Arg(128);

}  // namespace
}  // namespace rbench

BENCHMARK_MAIN();
