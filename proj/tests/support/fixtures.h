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

#ifndef RBENCH_TESTS_SUPPORT_FIXTURES_H_
#define RBENCH_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "rbench/text_metrics.h"

namespace rbench::testing {

inline std::filesystem::path SourceDir() { return RBENCH_SOURCE_DIR; }
inline std::filesystem::path FixturePath(const std::string& rel) {
  return SourceDir() / "tests" / "fixtures" / rel;
}
inline std::filesystem::path MiniCorpusPath(const std::string& rel) {
  return SourceDir() / "data" / "mini" / rel;
}

struct FixturePair {
  std::string id;
  std::string kind;  // identical | disjoint | mixed
  TokenSequence candidate;
  TokenSequence reference;
};

std::vector<FixturePair> LoadTextPairs();

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace rbench::testing

#endif  // RBENCH_TESTS_SUPPORT_FIXTURES_H_
