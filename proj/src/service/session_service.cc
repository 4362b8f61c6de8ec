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

#include "service/session_service.h"

#include <fstream>
#include <random>
#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "core/errors.h"
#include "core/strings.h"
#include "service/event_log.h"

namespace cocreate {
namespace {

absl::Status CheckWritableDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return MakeError(ErrorCode::kStorage,
                     absl::StrCat("cannot create ", dir.string(), ": ", ec.message()));
  }
  const auto probe = dir / ".write-probe";
  {
    std::ofstream out(probe);
    if (!(out << "ok")) {
      return MakeError(ErrorCode::kStorage,
                       absl::StrCat("log_dir ", dir.string(), " is not writable"));
    }
  }
  std::filesystem::remove(probe, ec);
  return absl::OkStatus();
}

std::vector<ServerMessage> ErrorReply(const std::string& session_id,
                                      const absl::Status& status) {
  return {server_msg::Error(session_id,
                            GetErrorCode(status).value_or(ErrorCode::kInternal),
                            Message(status))};
}

}  // namespace

bool IsValidSessionId(std::string_view id) {
  if (id.empty() || id.size() > 128 || id.front() == '.') return false;
  for (char c : id) {
    if (!absl::ascii_isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') {
      return false;
    }
  }
  return true;
}

SessionService::SessionService(Options options)
    : options_(std::move(options)),
      assignment_rng_(options_.config.condition_assignment.seed),
      id_rng_(std::random_device{}()) {}

absl::StatusOr<std::unique_ptr<SessionService>> SessionService::Create(
    Options options) {
  if (auto s = options.config.Validate(); !s.ok()) return s;
  if (auto s = CheckWritableDir(options.config.log_dir); !s.ok()) return s;
  if (options.backend == nullptr) {
    auto backend = MakeBackend(options.config.generator);
    if (!backend.ok()) return backend.status();
    options.backend = *std::move(backend);
  }
  return std::unique_ptr<SessionService>(new SessionService(std::move(options)));
}

SessionDeps SessionService::Deps() const {
  return SessionDeps{options_.backend, options_.config.manager, options_.clock};
}

std::string SessionService::NewSessionId() {
  for (;;) {
    std::string id = absl::StrFormat("s-%016x", id_rng_());
    if (!sessions_.contains(id) &&
        !std::filesystem::exists(SessionLogPath(options_.config.log_dir, id))) {
      return id;
    }
  }
}

std::vector<ServerMessage> SessionService::CreateSession(
    const std::string& participant_id, std::optional<Condition> condition) {
  if (participant_id.empty()) {
    return {server_msg::Error("", ErrorCode::kInvalidMessage,
                              "participant_id must be non-empty")};
  }
  const ServiceConfig& config = options_.config;
  SessionParams params;
  params.participant_id = participant_id;
  params.assignment = config.condition_assignment;
  params.num_lines = config.num_lines;
  params.interaction_budget = config.manager.interaction_budget;
  params.sigma = config.generator.sigma;

  auto slot = std::make_shared<Slot>();
  std::unique_lock slot_lock(slot->mu);
  {
    std::lock_guard lock(mu_);
    // Two draws per session keep the stream aligned however the condition
    // ends up being chosen.
    const bool coin = (assignment_rng_() & 1) != 0;
    params.rng_seed = assignment_rng_();
    if (condition.has_value()) {
      params.condition = *condition;
    } else if (config.condition_assignment.mode == AssignmentMode::kForced) {
      params.condition = config.condition_assignment.forced;
    } else if (auto it = participant_condition_.find(participant_id);
               it != participant_condition_.end()) {
      params.condition = it->second;
    } else {
      params.condition = coin ? Condition::kLocal : Condition::kGlobal;
    }
    participant_condition_.emplace(participant_id, params.condition);
    params.session_id = NewSessionId();
    sessions_.emplace(params.session_id, slot);
  }

  const auto path = SessionLogPath(config.log_dir, params.session_id);
  std::vector<ServerMessage> out;
  absl::Status status;
  if (auto log = JsonlEventLog::Open(path, 0); !log.ok()) {
    status = log.status();
  } else if (auto session = Session::Create(params, Deps(), *std::move(log), &out);
             !session.ok()) {
    status = session.status();
    std::error_code ec;
    std::filesystem::remove(path, ec);
  } else {
    slot->session = *std::move(session);
  }
  if (!status.ok()) {
    slot_lock.unlock();
    std::lock_guard lock(mu_);
    sessions_.erase(params.session_id);
    return ErrorReply("", status);
  }
  return out;
}

std::shared_ptr<SessionService::Slot> SessionService::FindSlot(
    const std::string& session_id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(session_id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::vector<ServerMessage> SessionService::HandleMessage(
    const std::string& session_id, const ClientMessage& message) {
  if (const auto* create = std::get_if<client::CreateSession>(&message)) {
    return CreateSession(create->participant_id, create->condition);
  }
  auto slot = FindSlot(session_id);
  if (slot == nullptr) {
    return {server_msg::Error(session_id, ErrorCode::kUnknownSession,
                              absl::StrCat("no session '", session_id, "'"))};
  }
  std::lock_guard lock(slot->mu);
  if (slot->session == nullptr) {
    return {server_msg::Error(session_id, ErrorCode::kUnknownSession,
                              "session is not available")};
  }
  return slot->session->Handle(message);
}

std::vector<ServerMessage> SessionService::HandleJson(
    const std::optional<std::string>& session_id, const nlohmann::json& message) {
  auto parsed = ParseClientMessage(message);
  if (!parsed.ok()) return ErrorReply(session_id.value_or(""), parsed.status());
  if (std::holds_alternative<client::CreateSession>(parsed->message)) {
    return HandleMessage("", parsed->message);
  }
  const std::optional<std::string> id =
      session_id.has_value() ? session_id : parsed->session_id;
  if (!id.has_value()) {
    return {server_msg::Error("", ErrorCode::kUnknownSession,
                              "message does not name a session")};
  }
  return HandleMessage(*id, parsed->message);
}

absl::StatusOr<SessionState> SessionService::GetState(const std::string& session_id) {
  auto slot = FindSlot(session_id);
  if (slot == nullptr) {
    return MakeError(ErrorCode::kUnknownSession,
                     absl::StrCat("no session '", session_id, "'"));
  }
  std::lock_guard lock(slot->mu);
  if (slot->session == nullptr) {
    return MakeError(ErrorCode::kUnknownSession, "session is not available");
  }
  return slot->session->state();
}

absl::StatusOr<std::vector<SessionEvent>> SessionService::LoadSessionLog(
    const std::string& session_id) const {
  if (!IsValidSessionId(session_id)) {
    return MakeError(ErrorCode::kUnknownSession,
                     absl::StrCat("invalid session id '", session_id, "'"));
  }
  return LoadEventLog(SessionLogPath(options_.config.log_dir, session_id));
}

absl::StatusOr<int> SessionService::RecoverSessions() {
  int restored = 0;
  std::error_code ec;
  for (const auto& entry :
       std::filesystem::directory_iterator(options_.config.log_dir, ec)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".jsonl") continue;
    const std::string id = entry.path().stem().string();
    if (!IsValidSessionId(id)) continue;
    {
      std::lock_guard lock(mu_);
      if (sessions_.contains(id)) continue;
    }
    auto events = LoadEventLog(entry.path(), /*repair=*/true);
    if (!events.ok()) return events.status();
    if (events->empty()) continue;
    if (events->front().session_id != id) {
      return MakeError(ErrorCode::kMalformedLog,
                       absl::StrCat(entry.path().string(),
                                    " belongs to another session"));
    }
    auto log = JsonlEventLog::Open(entry.path(), events->back().seq);
    if (!log.ok()) return log.status();
    auto session = Session::Restore(*events, Deps(), *std::move(log));
    if (!session.ok()) return session.status();
    auto slot = std::make_shared<Slot>();
    const SessionState& state = (*session)->state();
    std::lock_guard lock(mu_);
    participant_condition_.emplace(state.participant_id, state.condition);
    slot->session = *std::move(session);
    sessions_.emplace(id, std::move(slot));
    ++restored;
  }
  if (ec) {
    return MakeError(ErrorCode::kStorage,
                     absl::StrCat("cannot list ", options_.config.log_dir.string(),
                                  ": ", ec.message()));
  }
  return restored;
}

std::vector<std::string> SessionService::SessionIds() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, slot] : sessions_) ids.push_back(id);
  return ids;
}

}  // namespace cocreate
