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

#include "core/events.h"

#include <chrono>
#include <ctime>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "core/enum_names.h"
#include "core/errors.h"
#include "core/strings.h"

namespace cocreate {

template <>
struct EnumNames<Actor> {
  static constexpr std::pair<Actor, std::string_view> kTable[] = {
      {Actor::kHuman, "human"},
      {Actor::kAgent, "agent"},
      {Actor::kSystem, "system"}};
};

template <>
struct EnumNames<EventKind> {
  static constexpr std::pair<EventKind, std::string_view> kTable[] = {
      {EventKind::kSessionCreated, "session_created"},
      {EventKind::kCommActivated, "comm_activated"},
      {EventKind::kDialogueStep, "dialogue_step"},
      {EventKind::kQueryExecuted, "query_executed"},
      {EventKind::kStoryUpdated, "story_updated"},
      {EventKind::kInterruptOffered, "interrupt_offered"},
      {EventKind::kInterruptAccepted, "interrupt_accepted"},
      {EventKind::kInterruptDeclined, "interrupt_declined"},
      {EventKind::kGoalReported, "goal_reported"},
      {EventKind::kFeelingReported, "feeling_reported"},
      {EventKind::kBudgetExhausted, "budget_exhausted"},
      {EventKind::kSessionEnded, "session_ended"},
      {EventKind::kSurveySubmitted, "survey_submitted"}};
};

std::string_view ToString(Actor v) { return EnumToString(v); }
std::string_view ToString(EventKind v) { return EnumToString(v); }
std::optional<Actor> ParseActor(std::string_view s) {
  return EnumFromString<Actor>(s);
}
std::optional<EventKind> ParseEventKind(std::string_view s) {
  return EnumFromString<EventKind>(s);
}

nlohmann::json EventToJson(const SessionEvent& event) {
  return nlohmann::json{{"seq", event.seq},
                        {"ts", event.ts},
                        {"session_id", event.session_id},
                        {"actor", ToString(event.actor)},
                        {"kind", ToString(event.kind)},
                        {"payload", event.payload}};
}

std::string EventToJsonLine(const SessionEvent& event) {
  return EventToJson(event).dump();
}

absl::StatusOr<SessionEvent> EventFromJson(const nlohmann::json& j) {
  auto malformed = [](std::string_view what) {
    return MakeError(ErrorCode::kMalformedLog,
                     absl::StrCat("malformed event: ", Av(what)));
  };
  if (!j.is_object()) return malformed("not an object");
  for (const char* field : {"seq", "ts", "session_id", "actor", "kind"}) {
    if (!j.contains(field)) return malformed(absl::StrCat("missing ", field));
  }
  if (!j["seq"].is_number_integer()) return malformed("seq");
  if (!j["ts"].is_string() || !j["session_id"].is_string() ||
      !j["actor"].is_string() || !j["kind"].is_string()) {
    return malformed("field types");
  }

  SessionEvent event;
  event.seq = j["seq"].get<int64_t>();
  event.ts = j["ts"].get<std::string>();
  event.session_id = j["session_id"].get<std::string>();
  auto actor = ParseActor(j["actor"].get<std::string>());
  if (!actor) return malformed("actor");
  event.actor = *actor;
  const auto kind_name = j["kind"].get<std::string>();
  auto kind = ParseEventKind(kind_name);
  if (!kind) {
    return MakeError(ErrorCode::kUnsupportedEvent,
                     absl::StrCat("unknown event kind '", kind_name, "'"));
  }
  event.kind = *kind;
  event.payload = j.value("payload", nlohmann::json::object());
  return event;
}

absl::StatusOr<SessionEvent> ParseEventLine(std::string_view line) {
  auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return MakeError(ErrorCode::kMalformedLog, "event line is not valid JSON");
  }
  return EventFromJson(j);
}

std::string NowRfc3339() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto millis =
      duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t secs = system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&secs, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", &utc);
  return absl::StrFormat("%s.%03dZ", buf, static_cast<int>(millis));
}

}  // namespace cocreate
