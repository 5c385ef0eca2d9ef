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

#include "rbench/embedding.h"

#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "httplib.h"
#include "rbench/error.h"

namespace rbench {
namespace {

using nlohmann::json;

std::string Sha256Hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  }
  return out.str();
}

std::vector<double> ParseVector(const json& node) {
  if (!node.is_array()) throw ParseError("vector is not an array");
  std::vector<double> values;
  values.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number()) throw ParseError("vector entry is not a number");
    values.push_back(v.get<double>());
  }
  return values;
}

}  // namespace

EmbeddingVector::EmbeddingVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("embedding has dimension 0");
  double sum = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("embedding has a non-finite entry");
    sum += v * v;
  }
  norm_ = std::sqrt(sum);
  if (!(norm_ > 0.0)) throw InvalidArgument("embedding has zero norm");
}

double Cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw InvalidArgument("embedding dimension mismatch: " +
                          std::to_string(a.dim()) + " vs " +
                          std::to_string(b.dim()));
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) dot += a.values()[i] * b.values()[i];
  return std::clamp(dot / (a.norm() * b.norm()), -1.0, 1.0);
}

EmbeddingMap LoadEmbeddingFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embedding file " + path.string());
  EmbeddingMap out;
  std::optional<std::size_t> dim;
  std::string line;
  std::size_t line_no = 0;
  const std::string source = path.string();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(source, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!record.is_object() || !record.contains("id") ||
        !record["id"].is_string() || !record.contains("vector")) {
      throw ParseError(source, line_no, "expected {\"id\": string, \"vector\": [...]}");
    }
    const std::string id = record["id"].get<std::string>();
    std::vector<double> values;
    try {
      values = ParseVector(record["vector"]);
    } catch (const ParseError& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (dim && *dim != values.size()) {
      throw ParseError(source, line_no,
                       "dimension mismatch: expected " + std::to_string(*dim) +
                           ", got " + std::to_string(values.size()));
    }
    dim = values.size();
    if (out.contains(id)) {
      throw ParseError(source, line_no, "duplicate id '" + id + "'");
    }
    try {
      out.emplace(id, EmbeddingVector(std::move(values)));
    } catch (const InvalidArgument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return out;
}

FileEmbeddingProvider::FileEmbeddingProvider(EmbeddingMap vectors)
    : vectors_(std::move(vectors)) {}

FileEmbeddingProvider FileEmbeddingProvider::FromFile(
    const std::filesystem::path& path) {
  return FileEmbeddingProvider(LoadEmbeddingFile(path));
}

EmbeddingMap FileEmbeddingProvider::Embed(std::span<const TextItem> items) {
  EmbeddingMap out;
  for (const auto& item : items) {
    auto it = vectors_.find(item.id);
    if (it == vectors_.end()) {
      throw InvalidArgument("no embedding for id '" + item.id + "'");
    }
    out.insert_or_assign(item.id, it->second);
  }
  return out;
}

RemoteEmbeddingProvider::RemoteEmbeddingProvider(RemoteEmbeddingOptions options)
    : options_(std::move(options)) {
  const std::string& url = options_.url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http") {
    throw ConfigError("embedding URL must be http://host[:port]/path, got '" +
                      url + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (options_.batch_size == 0) throw ConfigError("batch size must be >= 1");
  if (options_.max_in_flight == 0) options_.max_in_flight = 1;
}

std::filesystem::path RemoteEmbeddingProvider::CachePath(
    const std::string& text) const {
  return *options_.cache_dir / (Sha256Hex(options_.url + '\n' + text) + ".json");
}

std::optional<std::vector<double>> RemoteEmbeddingProvider::ReadCache(
    const std::string& text) const {
  if (!options_.cache_dir) return std::nullopt;
  std::ifstream in(CachePath(text));
  if (!in) return std::nullopt;
  try {
    const json entry = json::parse(in);
    // Guard against hash collisions.
    if (entry.at("url") != options_.url || entry.at("text") != text) {
      return std::nullopt;
    }
    return ParseVector(entry.at("vector"));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void RemoteEmbeddingProvider::WriteCache(
    const std::string& text, const std::vector<double>& vector) const {
  if (!options_.cache_dir) return;
  std::filesystem::create_directories(*options_.cache_dir);
  const auto final_path = CachePath(text);
  std::ostringstream tmp_name;
  tmp_name << final_path.filename().string() << ".tmp." << ::getpid() << "."
           << std::hash<std::thread::id>{}(std::this_thread::get_id());
  const auto tmp_path = final_path.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp_path, std::ios::trunc);
    if (!out) throw IoError("cannot write cache entry " + tmp_path.string());
    const json entry = {{"url", options_.url}, {"text", text}, {"vector", vector}};
    out << entry.dump();
    if (!out) throw IoError("cannot write cache entry " + tmp_path.string());
  }
  std::filesystem::rename(tmp_path, final_path);
}

std::vector<std::vector<double>> RemoteEmbeddingProvider::FetchBatch(
    const std::vector<std::string>& texts, std::size_t batch_index,
    std::size_t batch_count) {
  const std::string body = json{{"texts", texts}}.dump();
  const std::string label = "embedding batch " + std::to_string(batch_index + 1) +
                            "/" + std::to_string(batch_count);
  std::string last_error;
  auto backoff = options_.initial_backoff;
  for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    ++requests_;
    auto res = client.Post(path_, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      if (res->status >= 400 && res->status < 500) break;
      continue;
    }
    try {
      const json reply = json::parse(res->body);
      const json& vectors = reply.at("vectors");
      if (!vectors.is_array() || vectors.size() != texts.size()) {
        throw ParseError("expected " + std::to_string(texts.size()) + " vectors");
      }
      std::vector<std::vector<double>> out;
      out.reserve(texts.size());
      for (const auto& v : vectors) out.push_back(ParseVector(v));
      return out;
    } catch (const std::exception& e) {
      throw ParseError(label + ": malformed response: " + e.what());
    }
  }
  throw NetworkError(label + " failed after " +
                     std::to_string(options_.max_retries + 1) +
                     " attempt(s): " + last_error);
}

EmbeddingMap RemoteEmbeddingProvider::Embed(std::span<const TextItem> items) {
  std::unordered_map<std::string, std::vector<double>> by_text;
  std::vector<std::string> pending;
  std::unordered_set<std::string> queued;
  for (const auto& item : items) {
    if (by_text.contains(item.text) || queued.contains(item.text)) continue;
    if (auto cached = ReadCache(item.text)) {
      by_text.emplace(item.text, std::move(*cached));
    } else {
      queued.insert(item.text);
      pending.push_back(item.text);
    }
  }

  const std::size_t batch_count =
      (pending.size() + options_.batch_size - 1) / options_.batch_size;
  for (std::size_t wave = 0; wave < batch_count; wave += options_.max_in_flight) {
    const std::size_t wave_end = std::min(batch_count, wave + options_.max_in_flight);
    std::vector<std::vector<std::string>> batches;
    std::vector<std::future<std::vector<std::vector<double>>>> futures;
    for (std::size_t b = wave; b < wave_end; ++b) {
      const std::size_t begin = b * options_.batch_size;
      const std::size_t end = std::min(pending.size(), begin + options_.batch_size);
      batches.emplace_back(pending.begin() + static_cast<std::ptrdiff_t>(begin),
                           pending.begin() + static_cast<std::ptrdiff_t>(end));
    }
    for (std::size_t b = 0; b < batches.size(); ++b) {
      futures.push_back(std::async(std::launch::async, [this, &batches, b, wave,
                                                        batch_count] {
        return FetchBatch(batches[b], wave + b, batch_count);
      }));
    }
    // Collect every future before rethrowing so no thread outlives batches.
    std::exception_ptr failure;
    for (std::size_t b = 0; b < futures.size(); ++b) {
      try {
        auto vectors = futures[b].get();
        for (std::size_t k = 0; k < vectors.size(); ++k) {
          WriteCache(batches[b][k], vectors[k]);
          by_text.insert_or_assign(batches[b][k], std::move(vectors[k]));
        }
      } catch (...) {
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  EmbeddingMap out;
  std::optional<std::size_t> dim;
  for (const auto& item : items) {
    const auto& values = by_text.at(item.text);
    if (dim && *dim != values.size()) {
      throw ParseError("embedding service returned mixed dimensions");
    }
    dim = values.size();
    out.insert_or_assign(item.id, EmbeddingVector(values));
  }
  return out;
}

double ClampSimilarity(double raw_cosine) {
  return std::clamp(raw_cosine, 0.0, 1.0);
}

Similarity TextSimilarity(const TextItem& pred, const TextItem& gt,
                          EmbeddingProvider& provider) {
  const TextItem items[] = {pred, gt};
  const EmbeddingMap vectors = provider.Embed(items);
  Similarity sim;
  sim.raw = Cosine(vectors.at(pred.id), vectors.at(gt.id));
  sim.value = ClampSimilarity(sim.raw);
  return sim;
}

}  // namespace rbench
