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

#include "service/session.h"

#include <exception>
#include <utility>

#include "absl/strings/str_cat.h"
#include "comms/builtin.h"
#include "core/errors.h"
#include "core/json_codec.h"
#include "core/overloaded.h"
#include "core/replay.h"
#include "core/strings.h"

namespace cocreate {

class Session::Outbox {
 public:
  explicit Outbox(const SessionState& state) : state_(state) {}

  void Add(ServerMessage m) { messages_.push_back(std::move(m)); }
  void Chat(std::string text) {
    if (!text.empty()) Add(server_msg::ChatAgent(id(), std::move(text)));
  }
  void Canvas() { Add(server_msg::CanvasStory(id(), state_.story, state_.sketch)); }
  void Budget() {
    Add(server_msg::BudgetUpdate(id(), state_.interactions_used,
                                 state_.interaction_budget));
  }
  void Error(ErrorCode code, std::string_view message) {
    Add(server_msg::Error(id(), code, message));
  }
  std::vector<ServerMessage> Take() { return std::move(messages_); }

 private:
  const std::string& id() const { return state_.session_id; }

  // Refers to the live state, so messages reflect post-event values.
  const SessionState& state_;
  std::vector<ServerMessage> messages_;
};

struct Session::Prepared {
  GeneratorState generator;
  std::vector<ContextQuery> queries;
  std::vector<Effect> others;
};

Session::Session(SessionDeps deps, std::unique_ptr<EventSink> sink,
                 Condition condition)
    : deps_(std::move(deps)),
      sink_(std::move(sink)),
      registry_(BuiltinRegistry(condition)) {}

absl::StatusOr<std::unique_ptr<Session>> Session::Create(
    const SessionParams& params, SessionDeps deps,
    std::unique_ptr<EventSink> sink, std::vector<ServerMessage>* out) {
  if (params.participant_id.empty()) {
    return MakeError(ErrorCode::kInvalidMessage, "participant_id must be non-empty");
  }
  if (params.num_lines <= 0 || params.interaction_budget <= 0 ||
      !(params.sigma > 0.0)) {
    return absl::InvalidArgumentError("invalid session parameters");
  }
  std::unique_ptr<Session> session(
      new Session(std::move(deps), std::move(sink), params.condition));
  session->state_.session_id = params.session_id;

  json payload{{"participant_id", params.participant_id},
               {"condition", params.condition},
               {"num_lines", params.num_lines},
               {"interaction_budget", params.interaction_budget},
               {"rng_seed", params.rng_seed},
               {"sigma", params.sigma},
               {"assignment", params.assignment}};
  if (auto status = session->Emit(Actor::kSystem, EventKind::kSessionCreated,
                                  std::move(payload));
      !status.ok()) {
    return status;
  }

  Outbox box(session->state_);
  box.Add(server_msg::SessionCreated(params.session_id, params.condition,
                                     params.interaction_budget));
  box.Canvas();
  box.Budget();
  box.Chat(absl::StrCat("Welcome! Let's write a ", params.num_lines,
                        "-line story together. You have ",
                        params.interaction_budget,
                        " interactions; reporting goals or feelings is free."));
  if (auto status = session->PostTurn(box); !status.ok()) return status;
  auto messages = box.Take();
  out->insert(out->end(), messages.begin(), messages.end());
  return session;
}

absl::StatusOr<std::unique_ptr<Session>> Session::Restore(
    std::span<const SessionEvent> events, SessionDeps deps,
    std::unique_ptr<EventSink> sink) {
  auto state = Replay(events);
  if (!state.ok()) return state.status();
  std::unique_ptr<Session> session(
      new Session(std::move(deps), std::move(sink), state->condition));
  session->state_ = *std::move(state);
  session->last_seq_ = events.back().seq;
  return session;
}

absl::Status Session::Emit(Actor actor, EventKind kind, json payload) {
  SessionEvent event{last_seq_ + 1,        deps_.clock(), state_.session_id,
                     actor,                kind,          std::move(payload)};
  SessionState next = state_;
  if (auto status = ApplyEvent(next, event); !status.ok()) {
    failed_ = true;
    return MakeError(ErrorCode::kInternal,
                     absl::StrCat("refusing inconsistent event: ", status.message()));
  }
  if (auto status = sink_->Append(event); !status.ok()) {
    failed_ = true;
    return MakeError(ErrorCode::kStorage, Message(status));
  }
  state_ = std::move(next);
  last_seq_ = event.seq;
  return absl::OkStatus();
}

std::vector<ServerMessage> Session::Handle(const ClientMessage& message) {
  Outbox out(state_);
  if (failed_) {
    out.Error(ErrorCode::kStorage, "session stopped after a storage failure");
    return out.Take();
  }
  const absl::Status status = std::visit(
      Overloaded{
          [&](const client::CreateSession&) {
            return MakeError(ErrorCode::kInvalidMessage,
                             "session.create is not valid inside a session");
          },
          [&](const client::SelectComm& m) { return OnSelect(m.comm_id, out); },
          [&](const client::DialogueReply& m) { return OnReply(m.text, out); },
          [&](const client::EndSession&) { return OnEnd(out); },
          [&](const client::SubmitSurvey& m) { return OnSurvey(m.answers, out); },
          [&](const client::ResumeSession&) {
            for (auto& m : Snapshot()) out.Add(std::move(m));
            return absl::OkStatus();
          },
      },
      message);
  if (!status.ok()) {
    out.Error(GetErrorCode(status).value_or(ErrorCode::kInternal),
              Message(status));
  }
  return out.Take();
}

std::vector<ServerMessage> Session::Snapshot() const {
  const std::string& id = state_.session_id;
  std::vector<ServerMessage> out;
  out.push_back(server_msg::SessionCreated(id, state_.condition,
                                           state_.interaction_budget));
  out.push_back(server_msg::CanvasStory(id, state_.story, state_.sketch));
  out.push_back(server_msg::BudgetUpdate(id, state_.interactions_used,
                                         state_.interaction_budget));
  if (state_.ended) {
    out.push_back(server_msg::SessionEnded(id));
  } else if (state_.active_dialogue.has_value()) {
    const auto& d = *state_.active_dialogue;
    const Communication* comm = registry_.Find(d.comm_id);
    if (d.interrupt && comm != nullptr) {
      out.push_back(server_msg::InterruptOffer(id, d.comm_id,
                                               comm->descriptor().label,
                                               CurrentPrompt()));
    } else {
      out.push_back(server_msg::ChatAgent(id, CurrentPrompt()));
    }
  } else {
    out.push_back(server_msg::CommMenu(id, MenuItems()));
  }
  return out;
}

absl::Status Session::OnSelect(const std::string& comm_id, Outbox& out) {
  if (state_.ended) {
    out.Error(ErrorCode::kEnded, "the session has ended");
    return absl::OkStatus();
  }
  auto activation = InterruptActivate(state_, registry_, comm_id);
  if (!activation.ok()) {
    const ErrorCode code =
        GetErrorCode(activation.status()).value_or(ErrorCode::kInternal);
    out.Error(code, Message(activation.status()));
    if (code == ErrorCode::kBusy) {
      out.Chat(CurrentPrompt());
      return absl::OkStatus();
    }
    return PostTurn(out);
  }

  const Communication& comm = *registry_.Find(comm_id);
  const bool counts = comm.descriptor().counts_against_budget;
  json payload{
      {"comm_id", comm_id},
      {"counts_against_budget", counts},
      {"interactions_used", state_.interactions_used + (counts ? 1 : 0)},
      {"dialogue", activation->dialogue ? json(*activation->dialogue) : json(nullptr)},
      {"utterance", activation->utterance}};
  if (auto st = Emit(Actor::kHuman, EventKind::kCommActivated, std::move(payload));
      !st.ok()) {
    return st;
  }
  if (counts) out.Budget();
  out.Chat(activation->utterance);

  if (!activation->dialogue.has_value()) {
    DialogueState immediate;
    immediate.comm_id = comm_id;
    if (auto st = Finish(comm, std::move(immediate), std::nullopt, out); !st.ok()) {
      return st;
    }
  }
  return PostTurn(out);
}

absl::Status Session::OnReply(const std::string& text, Outbox& out) {
  if (state_.ended) {
    out.Error(ErrorCode::kEnded, "the session has ended");
    return absl::OkStatus();
  }
  if (!state_.active_dialogue.has_value()) {
    out.Chat("There is no open question right now. Pick one of the options "
             "below.");
    return PostTurn(out);
  }
  const DialogueState dialogue = *state_.active_dialogue;
  const Communication* comm = registry_.Find(dialogue.comm_id);
  if (comm == nullptr) {
    return MakeError(ErrorCode::kInternal, "open dialogue has no communication");
  }

  StepResult result = StepDialogue(*comm, dialogue, text, state_);
  switch (result.kind) {
    case StepResult::Kind::kContinue:
    case StepResult::Kind::kReprompt: {
      json payload{{"comm_id", dialogue.comm_id},
                   {"reply", text},
                   {"outcome", ToString(result.kind)},
                   {"dialogue", *result.next},
                   {"utterance", result.utterance}};
      if (auto st = Emit(Actor::kHuman, EventKind::kDialogueStep, std::move(payload));
          !st.ok()) {
        return st;
      }
      out.Chat(result.utterance);
      return absl::OkStatus();
    }
    case StepResult::Kind::kAborted:
      if (auto st = AbortActiveDialogue(text, result.utterance); !st.ok()) return st;
      out.Chat(result.utterance);
      break;
    case StepResult::Kind::kCompleted:
      if (dialogue.interrupt) {
        const bool accepted = !result.answers.empty() && result.answers[0] == "yes";
        if (auto st = FinishInterrupt(*comm, dialogue, text, accepted, out); !st.ok()) {
          return st;
        }
      } else {
        DialogueState done = dialogue;
        done.answers = std::move(result.answers);
        if (auto st = Finish(*comm, std::move(done), text, out); !st.ok()) return st;
      }
      break;
  }
  return PostTurn(out);
}

absl::Status Session::OnEnd(Outbox& out) {
  if (state_.ended) {
    out.Error(ErrorCode::kEnded, "the session has already ended");
    return absl::OkStatus();
  }
  if (state_.active_dialogue.has_value()) {
    if (auto st = AbortActiveDialogue(std::nullopt, "Ending the session.");
        !st.ok()) {
      return st;
    }
  }
  return OnSelect(kEndSessionComm, out);
}

absl::Status Session::OnSurvey(const json& answers, Outbox& out) {
  if (!state_.ended) {
    out.Error(ErrorCode::kNotEnded, "the exit survey opens once the session ends");
    return absl::OkStatus();
  }
  if (state_.exit_survey.has_value()) {
    out.Error(ErrorCode::kSurveyExists, "the exit survey was already submitted");
    return absl::OkStatus();
  }
  ExitSurvey survey;
  try {
    answers.get_to(survey);
  } catch (const std::exception& ex) {
    out.Error(ErrorCode::kInvalidSurvey, ex.what());
    return absl::OkStatus();
  }
  if (auto st = Emit(Actor::kHuman, EventKind::kSurveySubmitted,
                     json{{"answers", survey}});
      !st.ok()) {
    return st;
  }
  out.Chat("Thank you! Your answers have been recorded.");
  return absl::OkStatus();
}

absl::StatusOr<Session::Prepared> Session::Prepare(
    const std::vector<Effect>& effects) const {
  StoryCreativeContext context(GeneratorState::FromSession(state_),
                               deps_.backend, state_.rng_seed);
  Prepared prepared;
  for (const Effect& e : effects) {
    if (const auto* q = std::get_if<effect::Query>(&e)) {
      auto ack = context.ExecuteQuery(q->query);
      if (!ack.ok()) return ack.status();
      prepared.queries.push_back(q->query);
    } else {
      prepared.others.push_back(e);
    }
  }
  prepared.generator = context.state();
  return prepared;
}

absl::Status Session::Commit(const Prepared& prepared, Actor actor,
                             const std::string& comm_id, Outbox& out) {
  for (const ContextQuery& q : prepared.queries) {
    if (auto st = Emit(actor, EventKind::kQueryExecuted,
                       json{{"comm_id", comm_id}, {"query", QueryToJson(q)}});
        !st.ok()) {
      return st;
    }
  }
  if (!prepared.queries.empty()) {
    const GeneratorState& g = prepared.generator;
    json payload{{"story", g.story},
                 {"sketch", g.sketch},
                 {"prompt", g.prompt ? json(*g.prompt) : json(nullptr)},
                 {"prompt_overridden", g.prompt_overridden}};
    if (auto st = Emit(actor, EventKind::kStoryUpdated, std::move(payload));
        !st.ok()) {
      return st;
    }
    out.Canvas();
  }

  for (const Effect& e : prepared.others) {
    absl::Status st = std::visit(
        Overloaded{
            [&](const effect::Query&) { return absl::OkStatus(); },
            [&](const effect::ReportGoal& g) {
              return Emit(Actor::kHuman, EventKind::kGoalReported,
                          json{{"goal_index", g.goal_index},
                               {"interactions_at_report",
                                state_.interactions_used}});
            },
            [&](const effect::ReportFeeling& f) {
              return Emit(Actor::kHuman, EventKind::kFeelingReported,
                          json(f.feeling));
            },
            [&](const effect::EndSession&) {
              auto status = Emit(Actor::kHuman, EventKind::kSessionEnded,
                                 json{{"reason", "user"}});
              if (status.ok()) {
                out.Add(server_msg::SessionEnded(state_.session_id));
                out.Chat("The session has ended. Please answer the short exit "
                         "survey.");
              }
              return status;
            },
        },
        e);
    if (!st.ok()) return st;
  }
  return absl::OkStatus();
}

absl::Status Session::Finish(const Communication& comm, DialogueState dialogue,
                             const std::optional<std::string>& reply,
                             Outbox& out) {
  const json reply_json = reply ? json(*reply) : json(nullptr);
  absl::StatusOr<Prepared> prepared = [&]() -> absl::StatusOr<Prepared> {
    auto effects = comm.Complete(dialogue.answers, state_);
    if (!effects.ok()) return effects.status();
    return Prepare(*effects);
  }();

  if (!prepared.ok()) {
    const std::string message =
        absl::StrCat("Sorry, that didn't work: ", prepared.status().message());
    json payload{{"comm_id", comm.id()},
                 {"reply", reply_json},
                 {"outcome", ToString(StepResult::Kind::kAborted)},
                 {"dialogue", nullptr},
                 {"utterance", message},
                 {"error", ErrorCodeName(GetErrorCode(prepared.status())
                                             .value_or(ErrorCode::kInternal))}};
    if (auto st = Emit(Actor::kHuman, EventKind::kDialogueStep, std::move(payload));
        !st.ok()) {
      return st;
    }
    out.Chat(message);
    return absl::OkStatus();
  }

  const std::string utterance =
      RenderUtterance(comm.script().completion_utterance, state_, dialogue);
  json payload{{"comm_id", comm.id()},
               {"reply", reply_json},
               {"outcome", ToString(StepResult::Kind::kCompleted)},
               {"dialogue", nullptr},
               {"utterance", utterance}};
  if (auto st = Emit(Actor::kHuman, EventKind::kDialogueStep, std::move(payload));
      !st.ok()) {
    return st;
  }
  if (auto st = Commit(*prepared, Actor::kHuman, comm.id(), out); !st.ok()) {
    return st;
  }
  out.Chat(utterance);
  return absl::OkStatus();
}

absl::Status Session::FinishInterrupt(const Communication& comm,
                                      const DialogueState& dialogue,
                                      const std::string& reply, bool accepted,
                                      Outbox& out) {
  auto prepared = Prepare(comm.CompleteInterrupt(dialogue, accepted));
  if (!prepared.ok()) accepted = false;

  json step{{"comm_id", comm.id()},
            {"reply", reply},
            {"outcome", ToString(StepResult::Kind::kCompleted)},
            {"dialogue", nullptr},
            {"utterance", ""}};
  if (auto st = Emit(Actor::kHuman, EventKind::kDialogueStep, std::move(step));
      !st.ok()) {
    return st;
  }
  const json target = dialogue.target_line ? json(*dialogue.target_line) : json(nullptr);
  if (auto st = Emit(Actor::kHuman,
                     accepted ? EventKind::kInterruptAccepted
                              : EventKind::kInterruptDeclined,
                     json{{"comm_id", comm.id()}, {"target_line", target}});
      !st.ok()) {
    return st;
  }
  if (!accepted) {
    out.Chat("Okay, I'll leave it as it is.");
    return absl::OkStatus();
  }
  // The accepted suggestion is the agent's own action.
  if (auto st = Commit(*prepared, Actor::kAgent, comm.id(), out); !st.ok()) {
    return st;
  }
  out.Chat(absl::StrCat("Line ", target.dump(), " is now frozen."));
  return absl::OkStatus();
}

absl::Status Session::AbortActiveDialogue(const std::optional<std::string>& reply,
                                          const std::string& utterance) {
  const DialogueState dialogue = *state_.active_dialogue;
  json payload{{"comm_id", dialogue.comm_id},
               {"reply", reply ? json(*reply) : json(nullptr)},
               {"outcome", ToString(StepResult::Kind::kAborted)},
               {"dialogue", nullptr},
               {"utterance", utterance}};
  if (auto st = Emit(Actor::kHuman, EventKind::kDialogueStep, std::move(payload));
      !st.ok()) {
    return st;
  }
  if (dialogue.interrupt) {
    return Emit(Actor::kHuman, EventKind::kInterruptDeclined,
                json{{"comm_id", dialogue.comm_id},
                     {"target_line", dialogue.target_line
                                         ? json(*dialogue.target_line)
                                         : json(nullptr)}});
  }
  return absl::OkStatus();
}

absl::Status Session::PostTurn(Outbox& out) {
  for (;;) {
    const ManagerDecision decision =
        ActivatePreferred(state_, registry_, deps_.manager);
    if (std::holds_alternative<decision::AnnounceBudgetExhausted>(decision)) {
      if (auto st = Emit(Actor::kSystem, EventKind::kBudgetExhausted,
                         json{{"interactions_used", state_.interactions_used},
                              {"interaction_budget", state_.interaction_budget}});
          !st.ok()) {
        return st;
      }
      out.Chat(absl::StrCat("You have used all ", state_.interaction_budget,
                            " interactions. You can still report sub-goals or "
                            "how you feel, or end the session."));
      continue;
    }
    if (const auto* start = std::get_if<decision::StartInterrupt>(&decision)) {
      const Communication* comm = registry_.Find(start->comm_id);
      std::optional<DialogueState> dialogue =
          comm ? comm->BeginInterrupt(state_) : std::nullopt;
      if (!dialogue.has_value()) {
        out.Add(server_msg::CommMenu(state_.session_id, MenuItems()));
        return absl::OkStatus();
      }
      const DialogueScript& script = ScriptFor(*comm, *dialogue);
      const std::string prompt =
          script.steps.empty()
              ? std::string()
              : RenderUtterance(script.steps[dialogue->step].utterance_template,
                                state_, *dialogue);
      OntologyTags tags = comm->descriptor().tags;
      tags.initiator = Initiator::kAgent;
      json payload{{"comm_id", comm->id()},
                   {"prompt", prompt},
                   {"dialogue", *dialogue},
                   {"tags", tags}};
      if (auto st = Emit(Actor::kAgent, EventKind::kInterruptOffered, std::move(payload));
          !st.ok()) {
        return st;
      }
      out.Add(server_msg::InterruptOffer(state_.session_id, comm->id(),
                                         comm->descriptor().label, prompt));
      return absl::OkStatus();
    }
    if (const auto* menu = std::get_if<decision::OfferMenu>(&decision)) {
      out.Add(server_msg::CommMenu(state_.session_id, menu->items));
    }
    return absl::OkStatus();
  }
}

std::string Session::CurrentPrompt() const {
  if (!state_.active_dialogue.has_value()) return {};
  const DialogueState& d = *state_.active_dialogue;
  const Communication* comm = registry_.Find(d.comm_id);
  if (comm == nullptr) return {};
  const DialogueScript& script = ScriptFor(*comm, d);
  if (d.step < 0 || d.step >= static_cast<int>(script.steps.size())) return {};
  return RenderUtterance(script.steps[d.step].utterance_template, state_, d);
}

std::vector<CommunicationDescriptor> Session::MenuItems() const {
  std::vector<CommunicationDescriptor> items;
  for (const auto& comm : registry_.all()) {
    if (comm->ConfidenceToActivate(state_) > 0.0) {
      items.push_back(comm->descriptor());
    }
  }
  return items;
}

}  // namespace cocreate
