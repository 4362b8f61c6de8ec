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

#ifndef COCREATE_SERVICE_SESSION_H_
#define COCREATE_SERVICE_SESSION_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "comms/communication.h"
#include "context/creative_context.h"
#include "core/events.h"
#include "core/types.h"
#include "manager/experience_manager.h"
#include "service/event_log.h"
#include "service/protocol.h"

namespace cocreate {

struct SessionParams {
  std::string session_id;
  std::string participant_id;
  Condition condition = Condition::kGlobal;
  ConditionAssignment assignment;
  int num_lines = kDefaultNumLines;
  int interaction_budget = kDefaultInteractionBudget;
  uint64_t rng_seed = 0;
  double sigma = kDefaultSigma;
};

struct SessionDeps {
  std::shared_ptr<const StoryBackend> backend;
  ManagerConfig manager;
  std::function<std::string()> clock = NowRfc3339;
};

// One participant session: binds the experience manager, the session's
// communications and its creative context to the wire protocol.
//
// Every state change is an event that is first persisted to the sink and
// then folded into the state with ApplyEvent, so the log always replays to
// the live state. Not thread-safe; the owner serializes calls.
class Session {
 public:
  // Logs session_created and appends the opening messages to `out`.
  static absl::StatusOr<std::unique_ptr<Session>> Create(
      const SessionParams& params, SessionDeps deps,
      std::unique_ptr<EventSink> sink, std::vector<ServerMessage>* out);

  // Rebuilds a session from its log; `sink` must continue that log.
  static absl::StatusOr<std::unique_ptr<Session>> Restore(
      std::span<const SessionEvent> events, SessionDeps deps,
      std::unique_ptr<EventSink> sink);

  std::vector<ServerMessage> Handle(const ClientMessage& message);

  // Messages that rebuild a client's view from scratch.
  std::vector<ServerMessage> Snapshot() const;

  const SessionState& state() const { return state_; }
  const CommunicationRegistry& registry() const { return registry_; }
  int64_t last_seq() const { return last_seq_; }
  // Set after a storage failure; the session then refuses all input.
  bool failed() const { return failed_; }

 private:
  class Outbox;
  struct Prepared;

  Session(SessionDeps deps, std::unique_ptr<EventSink> sink, Condition condition);

  absl::Status Emit(Actor actor, EventKind kind, nlohmann::json payload);

  absl::Status OnSelect(const std::string& comm_id, Outbox& out);
  absl::Status OnReply(const std::string& text, Outbox& out);
  absl::Status OnEnd(Outbox& out);
  absl::Status OnSurvey(const nlohmann::json& answers, Outbox& out);

  absl::StatusOr<Prepared> Prepare(const std::vector<Effect>& effects) const;
  absl::Status Commit(const Prepared& prepared, Actor actor,
                      const std::string& comm_id, Outbox& out);
  // Runs a completed human dialogue's effects and logs the final step.
  absl::Status Finish(const Communication& comm, DialogueState dialogue,
                      const std::optional<std::string>& reply, Outbox& out);
  absl::Status FinishInterrupt(const Communication& comm,
                               const DialogueState& dialogue,
                               const std::string& reply, bool accepted,
                               Outbox& out);
  absl::Status AbortActiveDialogue(const std::optional<std::string>& reply,
                                   const std::string& utterance);
  // Lets the manager take the next turn (menu, interrupt or announcement).
  absl::Status PostTurn(Outbox& out);

  std::string CurrentPrompt() const;
  std::vector<CommunicationDescriptor> MenuItems() const;

  SessionDeps deps_;
  std::unique_ptr<EventSink> sink_;
  CommunicationRegistry registry_;
  SessionState state_;
  int64_t last_seq_ = 0;
  bool failed_ = false;
};

}  // namespace cocreate

#endif  // COCREATE_SERVICE_SESSION_H_
