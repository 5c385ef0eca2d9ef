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

#include "fixtures.h"

#include <atomic>
#include <random>

#include <nlohmann/json.hpp>

#include "rbench/serialization.h"

namespace rbench::testing {

std::vector<FixturePair> LoadTextPairs() {
  std::vector<FixturePair> out;
  ForEachJsonLine(FixturePath("text/pairs50.jsonl"), [&](const nlohmann::json& j) {
    out.push_back({j.at("id").get<std::string>(), j.at("kind").get<std::string>(),
                   Tokenize(j.at("candidate").get<std::string>()),
                   Tokenize(j.at("reference").get<std::string>())});
  });
  return out;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = std::filesystem::temp_directory_path() /
          ("rbench-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace rbench::testing
