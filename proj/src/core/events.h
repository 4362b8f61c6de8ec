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

#ifndef COCREATE_CORE_EVENTS_H_
#define COCREATE_CORE_EVENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace cocreate {

enum class Actor { kHuman, kAgent, kSystem };

enum class EventKind {
  kSessionCreated,
  kCommActivated,
  kDialogueStep,
  kQueryExecuted,
  kStoryUpdated,
  kInterruptOffered,
  kInterruptAccepted,
  kInterruptDeclined,
  kGoalReported,
  kFeelingReported,
  kBudgetExhausted,
  kSessionEnded,
  kSurveySubmitted,
};

std::string_view ToString(Actor v);
std::string_view ToString(EventKind v);
std::optional<Actor> ParseActor(std::string_view s);
std::optional<EventKind> ParseEventKind(std::string_view s);

// One append-only telemetry record. Serialized as a single JSONL line with
// the fields `seq`, `ts`, `session_id`, `actor`, `kind`, `payload`.
//
// Payload shapes by kind:
//   session_created   {participant_id, condition, num_lines,
//                      interaction_budget, rng_seed, sigma,
//                      assignment: {mode, seed}}
//   comm_activated    {comm_id, counts_against_budget, interactions_used,
//                      dialogue: DialogueState|null, utterance}
//   dialogue_step     {comm_id, reply, outcome: continue|reprompt|completed|
//                      aborted, dialogue: DialogueState|null, utterance,
//                      error?}
//   query_executed    {comm_id, query: ContextQuery}
//   story_updated     {story, sketch, prompt, prompt_overridden}
//   interrupt_offered {comm_id, prompt, dialogue}
//   interrupt_accepted / interrupt_declined {comm_id, target_line}
//   goal_reported     {goal_index, interactions_at_report}
//   feeling_reported  {feeling, text?}
//   budget_exhausted  {interactions_used, interaction_budget}
//   session_ended     {reason}
//   survey_submitted  {answers: {goal1..3, satisfaction, frustration}}
struct SessionEvent {
  int64_t seq = 0;
  std::string ts;
  std::string session_id;
  Actor actor = Actor::kSystem;
  EventKind kind = EventKind::kSessionCreated;
  nlohmann::json payload = nlohmann::json::object();

  bool operator==(const SessionEvent&) const = default;
};

nlohmann::json EventToJson(const SessionEvent& event);
// Compact single-line encoding without the trailing newline.
std::string EventToJsonLine(const SessionEvent& event);

// Unknown `kind` yields kUnsupportedEvent; anything else malformed yields
// kMalformedLog.
absl::StatusOr<SessionEvent> EventFromJson(const nlohmann::json& j);
absl::StatusOr<SessionEvent> ParseEventLine(std::string_view line);

// Current UTC wall time as RFC 3339 with millisecond precision.
std::string NowRfc3339();

}  // namespace cocreate

#endif  // COCREATE_CORE_EVENTS_H_
