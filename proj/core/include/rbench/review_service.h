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

#ifndef RBENCH_REVIEW_SERVICE_H_
#define RBENCH_REVIEW_SERVICE_H_

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "rbench/review.h"

namespace httplib {
class Server;
}

namespace rbench {

struct ReviewServiceOptions {
  std::filesystem::path queue;
  std::filesystem::path decisions;
  // Root for GET /api/images/{image_id}; falls back to RB_IMAGE_ROOT.
  std::optional<std::filesystem::path> image_root;
  // Static UI bundle mounted at "/".
  std::optional<std::filesystem::path> ui_root;
  std::string host = "0.0.0.0";
};

// HTTP front end of the review step.
//
//   GET  /api/queue                  item summaries
//   GET  /api/items/{id}             full item with candidates, version and
//                                    the indices kept by its decision
//   GET  /api/images/{image_id}      image bytes from the image root
//   POST /api/items/{id}/decision    200 applied, 409 stale version,
//                                    422 bad index or box, 404 unknown id
//
// Every applied decision is appended (and fsynced) to the decisions log
// before it becomes visible. On start-up the log is replayed over the queue,
// which rebuilds the exact in-memory state. Readers work on immutable
// snapshots; writers are serialized.
class ReviewService {
 public:
  explicit ReviewService(ReviewServiceOptions options);
  ~ReviewService();

  ReviewService(const ReviewService&) = delete;
  ReviewService& operator=(const ReviewService&) = delete;

  // Binds without serving; port 0 picks a free port. Returns the bound port.
  // Throws IoError when the port cannot be bound.
  int Bind(int port);
  // Serves until Stop(). Requires a successful Bind().
  void Serve();
  // Blocks until Serve() accepts connections.
  void WaitUntilReady() const;
  void Stop();

  std::shared_ptr<const ReviewState> Snapshot() const;
  // Log entries that did not apply during replay.
  std::size_t replay_rejections() const { return replay_rejections_; }

  // The decision path used by the HTTP handler, exposed for embedding.
  DecisionResult Submit(const ReviewDecision& decision);

 private:
  void InstallRoutes();

  ReviewServiceOptions options_;
  std::unique_ptr<httplib::Server> server_;
  mutable std::mutex snapshot_mu_;
  std::shared_ptr<const ReviewState> snapshot_;
  std::mutex write_mu_;
  std::size_t replay_rejections_ = 0;
};

}  // namespace rbench

#endif  // RBENCH_REVIEW_SERVICE_H_
