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

#ifndef COCREATE_SERVICE_SCRIPTED_CLIENT_H_
#define COCREATE_SERVICE_SCRIPTED_CLIENT_H_

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "core/events.h"
#include "core/types.h"
#include "json.hpp"
#include "service/session_service.h"

namespace cocreate {

// How the scripted client reaches a service.
class ClientTransport {
 public:
  virtual ~ClientTransport() = default;
  // Sends one client message and returns every server message it caused.
  virtual absl::StatusOr<std::vector<nlohmann::json>> Send(
      const std::optional<std::string>& session_id, const nlohmann::json& message) = 0;
  virtual absl::StatusOr<nlohmann::json> FetchState(const std::string& session_id) = 0;
  virtual absl::StatusOr<std::vector<SessionEvent>> FetchLog(
      const std::string& session_id) = 0;
};

class InProcessTransport final : public ClientTransport {
 public:
  explicit InProcessTransport(SessionService& service) : service_(service) {}

  absl::StatusOr<std::vector<nlohmann::json>> Send(
      const std::optional<std::string>& session_id,
      const nlohmann::json& message) override;
  absl::StatusOr<nlohmann::json> FetchState(const std::string& session_id) override;
  absl::StatusOr<std::vector<SessionEvent>> FetchLog(
      const std::string& session_id) override;

 private:
  SessionService& service_;
};

// Uses the HTTP fallback endpoints. A request that outlives `timeout` is
// kScriptTimeout.
class HttpTransport final : public ClientTransport {
 public:
  explicit HttpTransport(std::string base_url,
                         std::chrono::milliseconds timeout = std::chrono::seconds(30));

  absl::StatusOr<std::vector<nlohmann::json>> Send(
      const std::optional<std::string>& session_id,
      const nlohmann::json& message) override;
  absl::StatusOr<nlohmann::json> FetchState(const std::string& session_id) override;
  absl::StatusOr<std::vector<SessionEvent>> FetchLog(
      const std::string& session_id) override;

 private:
  absl::StatusOr<nlohmann::json> Request(const std::string& method,
                                         const std::string& path,
                                         const nlohmann::json* body);

  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

// One client message with predicates over the server messages it caused.
//
// Predicates are JSON objects with a single key:
//   {"has": type} {"lacks": type} {"count": {"type": t, "n": k}}
//   {"first": type} {"last": type}
//   {"error": code} {"no_error": true}
//   {"menu": [ids]} {"menu_contains": [ids]} {"menu_lacks": [ids]}
//   {"chat_contains": text}
// and, against the client's view built from every message so far:
//   {"budget": {"used": u, "limit": l}} {"ended": bool}
//   {"line_topic": {"from": a, "to": b, "topic": t}}
//   {"line_text": {"line": i, "text": s}} {"line_frozen": {"line": i, "frozen": b}}
struct ScriptStep {
  std::string note;
  nlohmann::json send;
  std::vector<nlohmann::json> expect;
};

struct ClientScript {
  std::string participant_id = "p-script";
  std::optional<Condition> condition;
  std::vector<nlohmann::json> expect_on_create;
  std::vector<ScriptStep> steps;
};

struct TranscriptEntry {
  std::string note;
  nlohmann::json sent;
  std::vector<nlohmann::json> received;
};

// Latest canvas, menu, budget and end state as a client would see them.
struct ClientView {
  std::optional<nlohmann::json> canvas;
  std::optional<nlohmann::json> menu;
  std::optional<nlohmann::json> budget;
  bool ended = false;

  void Apply(const nlohmann::json& message);
};

struct ScriptResult {
  std::string session_id;
  std::vector<TranscriptEntry> transcript;
  ClientView view;
  // Set at the first failed predicate; later steps are not sent.
  std::optional<int> failed_step;  // -1 for the create step
  std::string failure;

  bool passed() const { return !failed_step.has_value(); }
};

// Returns an empty string when the predicate holds, else a description.
std::string CheckPredicate(const nlohmann::json& predicate,
                           const std::vector<nlohmann::json>& received,
                           const ClientView& view);

// Creates the session, then sends each step in order. Transport failures
// (including kScriptTimeout) are returned as errors; predicate failures are
// reported in the result.
absl::StatusOr<ScriptResult> RunScript(ClientTransport& transport,
                                       const ClientScript& script);

nlohmann::json TranscriptToJson(const std::vector<TranscriptEntry>& transcript);

absl::StatusOr<ScriptStep> ScriptStepFromJson(const nlohmann::json& j);

}  // namespace cocreate

#endif  // COCREATE_SERVICE_SCRIPTED_CLIENT_H_
