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

#ifndef RBENCH_EMBEDDING_H_
#define RBENCH_EMBEDDING_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rbench {

// Dense sentence embedding. Construction enforces dim >= 1, finite entries
// and a non-zero norm.
class EmbeddingVector {
 public:
  explicit EmbeddingVector(std::vector<double> values);

  std::size_t dim() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double norm() const { return norm_; }

 private:
  std::vector<double> values_;
  double norm_;
};

using EmbeddingMap = std::map<std::string, EmbeddingVector>;

// Throws InvalidArgument on a dimension mismatch.
double Cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Reads JSON Lines records {"id": string, "vector": [number, ...]}. Blank
// lines are skipped. Throws ParseError (with line number) on malformed lines,
// duplicate ids and mixed dimensions, IoError when the file cannot be opened.
EmbeddingMap LoadEmbeddingFile(const std::filesystem::path& path);

struct TextItem {
  std::string id;
  std::string text;
};

// Maps text items to vectors. Every vector from one provider shares a
// dimension.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  // Returns one vector per item id. Throws when an item cannot be resolved.
  virtual EmbeddingMap Embed(std::span<const TextItem> items) = 0;
};

// Serves precomputed vectors keyed by item id.
class FileEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit FileEmbeddingProvider(EmbeddingMap vectors);
  static FileEmbeddingProvider FromFile(const std::filesystem::path& path);

  EmbeddingMap Embed(std::span<const TextItem> items) override;

 private:
  EmbeddingMap vectors_;
};

struct RemoteEmbeddingOptions {
  // Full endpoint, e.g. http://localhost:8000/embed
  std::string url;
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{200};
  std::chrono::seconds timeout{60};
  // Disabled when empty.
  std::optional<std::filesystem::path> cache_dir;
};

// Client of an HTTP embedding service:
//   POST {"texts": [...]}  ->  {"vectors": [[...], ...]} in input order.
// Texts already present in the on-disk cache are never sent. The cache is
// content-addressed by (url, exact text) and written with atomic renames.
class RemoteEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit RemoteEmbeddingProvider(RemoteEmbeddingOptions options);

  EmbeddingMap Embed(std::span<const TextItem> items) override;

  std::size_t requests_issued() const { return requests_.load(); }

 private:
  std::vector<std::vector<double>> FetchBatch(
      const std::vector<std::string>& texts, std::size_t batch_index,
      std::size_t batch_count);
  std::optional<std::vector<double>> ReadCache(const std::string& text) const;
  void WriteCache(const std::string& text,
                  const std::vector<double>& vector) const;
  std::filesystem::path CachePath(const std::string& text) const;

  RemoteEmbeddingOptions options_;
  std::string scheme_host_port_;
  std::string path_;
  std::atomic<std::size_t> requests_{0};
};

struct Similarity {
  // Cosine clamped into [0, 1].
  double value = 0.0;
  double raw = 0.0;
  bool clamped() const { return raw < 0.0; }
};

double ClampSimilarity(double raw_cosine);

// Embeds both items through the provider and returns their clamped cosine.
Similarity TextSimilarity(const TextItem& pred, const TextItem& gt,
                          EmbeddingProvider& provider);

}  // namespace rbench

#endif  // RBENCH_EMBEDDING_H_
