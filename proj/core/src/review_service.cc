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

#include "rbench/review_service.h"

#include <cstdlib>
#include <set>

#include <nlohmann/json.hpp>

#include "httplib.h"
#include "rbench/error.h"
#include "rbench/serialization.h"

namespace rbench {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::size_t kSnippetLength = 120;

ordered_json Summary(const ReviewItem& item) {
  std::string snippet = item.textual_rationale.substr(0, kSnippetLength);
  return {{"id", item.id},
          {"image_id", item.image_id},
          {"question", item.question},
          {"answer", item.answer},
          {"rationale", snippet},
          {"num_candidates", item.candidates.size()},
          {"status", ToString(item.status)},
          {"version", item.version}};
}

void SendJson(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void SendError(httplib::Response& res, int status, const std::string& kind,
               const std::string& reason) {
  SendJson(res, status, {{"error", kind}, {"reason", reason}});
}

std::string MimeType(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".png") return "image/png";
  if (ext == ".gif") return "image/gif";
  if (ext == ".webp") return "image/webp";
  return "application/octet-stream";
}

}  // namespace

ReviewService::ReviewService(ReviewServiceOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  server_->set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  if (!options_.image_root) {
    if (const char* root = std::getenv("RB_IMAGE_ROOT"); root != nullptr && *root != '\0') {
      options_.image_root = root;
    }
  }
  auto state = std::make_shared<ReviewState>(LoadReviewQueue(options_.queue));
  for (const auto& decision : LoadDecisions(options_.decisions)) {
    if (state->Apply(decision).outcome != DecisionOutcome::kApplied) ++replay_rejections_;
  }
  snapshot_ = std::move(state);
  InstallRoutes();
}

ReviewService::~ReviewService() { Stop(); }

std::shared_ptr<const ReviewState> ReviewService::Snapshot() const {
  std::lock_guard<std::mutex> lock(snapshot_mu_);
  return snapshot_;
}

DecisionResult ReviewService::Submit(const ReviewDecision& decision) {
  std::lock_guard<std::mutex> writer(write_mu_);
  const auto current = Snapshot();
  DecisionResult check = current->Check(decision);
  if (check.outcome != DecisionOutcome::kApplied) return check;
  AppendJsonLine(options_.decisions, ToJson(decision));
  auto next = std::make_shared<ReviewState>(*current);
  DecisionResult applied = next->Apply(decision);
  {
    std::lock_guard<std::mutex> lock(snapshot_mu_);
    snapshot_ = std::move(next);
  }
  return applied;
}

void ReviewService::InstallRoutes() {
  server_->Get("/api/queue", [this](const httplib::Request&, httplib::Response& res) {
    const auto state = Snapshot();
    ordered_json out = ordered_json::array();
    for (const auto& item : state->items()) out.push_back(Summary(item));
    SendJson(res, 200, out);
  });

  server_->Get(R"(/api/items/([^/]+))", [this](const httplib::Request& req,
                                                httplib::Response& res) {
    const auto state = Snapshot();
    const ReviewItem* item = state->Find(req.matches[1].str());
    if (item == nullptr) return SendError(res, 404, "not_found", "unknown item id");
    ordered_json body = ToJson(*item);
    ordered_json kept = ordered_json::array();
    const std::set<int> removed = item->decision
                                      ? std::set<int>(item->decision->removed.begin(),
                                                      item->decision->removed.end())
                                      : std::set<int>{};
    for (std::size_t k = 0; k < item->candidates.size(); ++k) {
      if (!removed.contains(static_cast<int>(k))) kept.push_back(k);
    }
    body["kept_candidates"] = std::move(kept);
    SendJson(res, 200, body);
  });

  server_->Get(R"(/api/images/([^/]+))", [this](const httplib::Request& req,
                                                 httplib::Response& res) {
    if (!options_.image_root) {
      return SendError(res, 404, "not_found", "no image root configured");
    }
    const std::string image_id = req.matches[1].str();
    const auto state = Snapshot();
    for (const auto& item : state->items()) {
      if (item.image_id != image_id) continue;
      const auto path = *options_.image_root / item.image_path;
      try {
        res.set_content(ReadTextFile(path), MimeType(path));
        res.status = 200;
      } catch (const IoError&) {
        SendError(res, 404, "not_found", "image file missing");
      }
      return;
    }
    SendError(res, 404, "not_found", "unknown image id");
  });

  server_->Post(R"(/api/items/([^/]+)/decision)", [this](const httplib::Request& req,
                                                          httplib::Response& res) {
    const std::string id = req.matches[1].str();
    ReviewDecision decision;
    try {
      json body = json::parse(req.body);
      if (!body.is_object()) throw ParseError("decision must be a JSON object");
      if (body.contains("id") && body.at("id") != id) {
        return SendError(res, 422, "invalid", "body id does not match the URL");
      }
      body["id"] = id;
      decision = DecisionFromJson(body);
    } catch (const InvalidArgument& e) {
      return SendError(res, 422, "invalid", e.what());
    } catch (const std::exception& e) {
      return SendError(res, 400, "bad_request", e.what());
    }
    DecisionResult result;
    try {
      result = Submit(decision);
    } catch (const IoError& e) {
      return SendError(res, 500, "io_error", e.what());
    }
    switch (result.outcome) {
      case DecisionOutcome::kApplied:
        return SendJson(res, 200, {{"id", id}, {"version", result.version},
                                   {"status", ToString(decision.status)}});
      case DecisionOutcome::kUnknownId:
        return SendError(res, 404, "not_found", result.reason);
      case DecisionOutcome::kConflict:
        return SendJson(res, 409, {{"error", "conflict"}, {"reason", result.reason},
                                   {"version", result.version}});
      case DecisionOutcome::kInvalid:
        return SendError(res, 422, "invalid", result.reason);
    }
  });

  if (options_.ui_root) server_->set_mount_point("/", options_.ui_root->string());
}

int ReviewService::Bind(int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(options_.host);
  } else if (!server_->bind_to_port(options_.host, port)) {
    bound = -1;
  }
  if (bound < 0) {
    throw IoError("cannot bind review service to " + options_.host + ":" + std::to_string(port));
  }
  return bound;
}

void ReviewService::Serve() { server_->listen_after_bind(); }

void ReviewService::WaitUntilReady() const { server_->wait_until_ready(); }

void ReviewService::Stop() {
  if (server_ && server_->is_running()) server_->stop();
}

}  // namespace rbench
