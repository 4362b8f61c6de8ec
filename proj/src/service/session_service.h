// Copyright 2026 The cocreate Authors
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

#ifndef COCREATE_SERVICE_SESSION_SERVICE_H_
#define COCREATE_SERVICE_SESSION_SERVICE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "service/config.h"
#include "service/protocol.h"
#include "service/session.h"

namespace cocreate {

// True for ids that are safe to use as a log file name.
bool IsValidSessionId(std::string_view id);

// Owns all live sessions. Thread-safe: calls for different sessions run in
// parallel, calls for one session are serialized in arrival order.
class SessionService {
 public:
  struct Options {
    ServiceConfig config;
    // Defaults to the backend described by config.generator.
    std::shared_ptr<const StoryBackend> backend;
    std::function<std::string()> clock = NowRfc3339;
  };

  // Fails if the log directory cannot be created or written.
  static absl::StatusOr<std::unique_ptr<SessionService>> Create(Options options);

  std::vector<ServerMessage> CreateSession(const std::string& participant_id,
                                           std::optional<Condition> condition);
  std::vector<ServerMessage> HandleMessage(const std::string& session_id,
                                           const ClientMessage& message);
  // Parses a wire message and dispatches it. `session_id` (from the URL or
  // the connection) wins over a session_id field in the message.
  std::vector<ServerMessage> HandleJson(const std::optional<std::string>& session_id,
                                        const nlohmann::json& message);

  absl::StatusOr<SessionState> GetState(const std::string& session_id);
  absl::StatusOr<std::vector<SessionEvent>> LoadSessionLog(
      const std::string& session_id) const;

  // Reloads every log in log_dir, dropping torn trailing lines. Returns the
  // number of sessions restored.
  absl::StatusOr<int> RecoverSessions();

  std::vector<std::string> SessionIds() const;
  const ServiceConfig& config() const { return options_.config; }

 private:
  struct Slot {
    std::mutex mu;
    std::unique_ptr<Session> session;
  };

  explicit SessionService(Options options);

  std::shared_ptr<Slot> FindSlot(const std::string& session_id) const;
  SessionDeps Deps() const;
  std::string NewSessionId();

  Options options_;

  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  // Condition and per-session seeds, drawn in creation order.
  std::mt19937_64 assignment_rng_;
  std::mt19937_64 id_rng_;
  std::map<std::string, Condition> participant_condition_;
};

}  // namespace cocreate

#endif  // COCREATE_SERVICE_SESSION_SERVICE_H_
