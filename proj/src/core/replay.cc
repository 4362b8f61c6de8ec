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

#include "core/replay.h"

#include <exception>
#include <string>

#include "absl/strings/str_cat.h"
#include "core/errors.h"
#include "core/json_codec.h"
#include "core/strings.h"

namespace cocreate {
namespace {

absl::Status Malformed(const SessionEvent& event, std::string_view what) {
  return MakeError(ErrorCode::kMalformedLog,
                   absl::StrCat("event seq ", event.seq, " (",
                                Av(ToString(event.kind)), "): ", Av(what)));
}

std::optional<DialogueState> DialogueFrom(const json& payload) {
  if (!payload.contains("dialogue") || payload["dialogue"].is_null()) {
    return std::nullopt;
  }
  return payload["dialogue"].get<DialogueState>();
}

// Mutates `s` in place; may throw json exceptions on bad payloads.
absl::Status ApplyUnchecked(SessionState& s, const SessionEvent& e) {
  const json& p = e.payload;
  switch (e.kind) {
    case EventKind::kSessionCreated: {
      s = SessionState{};
      s.session_id = e.session_id;
      p.at("participant_id").get_to(s.participant_id);
      p.at("condition").get_to(s.condition);
      p.at("assignment").get_to(s.assignment);
      s.story = StoryDocument::Empty(p.at("num_lines").get<int>());
      p.at("interaction_budget").get_to(s.interaction_budget);
      p.at("rng_seed").get_to(s.rng_seed);
      s.sketch.sigma = p.value("sigma", kDefaultSigma);
      if (s.story.num_lines() <= 0 || s.interaction_budget <= 0) {
        return Malformed(e, "num_lines and interaction_budget must be positive");
      }
      return absl::OkStatus();
    }
    case EventKind::kCommActivated: {
      const bool counts = p.at("counts_against_budget").get<bool>();
      if (counts) {
        ++s.interactions_used;
        if (s.interactions_used > s.interaction_budget) {
          return Malformed(e, "interaction budget exceeded");
        }
        if (e.actor == Actor::kHuman) {
          s.last_edited_line.reset();
          s.interrupt_offered_for_last_action = false;
        }
      }
      if (p.contains("interactions_used") &&
          p["interactions_used"].get<int>() != s.interactions_used) {
        return Malformed(e, "interactions_used disagrees with the log");
      }
      s.active_dialogue = DialogueFrom(p);
      return absl::OkStatus();
    }
    case EventKind::kDialogueStep:
      s.active_dialogue = DialogueFrom(p);
      return absl::OkStatus();
    case EventKind::kQueryExecuted: {
      const json& query = p.at("query");
      if (e.actor == Actor::kHuman && query.at("type") == "edit_line") {
        s.last_edited_line = query.at("index").get<int>();
      }
      return absl::OkStatus();
    }
    case EventKind::kStoryUpdated: {
      auto story = p.at("story").get<StoryDocument>();
      if (story.num_lines() != s.story.num_lines()) {
        return Malformed(e, "story length changed");
      }
      if (story.generation_counter < s.story.generation_counter) {
        return Malformed(e, "generation counter went backwards");
      }
      s.story = std::move(story);
      p.at("sketch").get_to(s.sketch);
      s.prompt = p.contains("prompt") && !p["prompt"].is_null()
                     ? std::optional<std::string>(p["prompt"].get<std::string>())
                     : std::nullopt;
      s.prompt_overridden = p.value("prompt_overridden", false);
      return absl::OkStatus();
    }
    case EventKind::kInterruptOffered:
      s.active_dialogue = DialogueFrom(p);
      s.interrupt_offered_for_last_action = true;
      return absl::OkStatus();
    case EventKind::kInterruptAccepted:
    case EventKind::kInterruptDeclined:
      s.active_dialogue.reset();
      return absl::OkStatus();
    case EventKind::kGoalReported: {
      GoalReport report;
      p.at("goal_index").get_to(report.goal_index);
      p.at("interactions_at_report").get_to(report.interactions_at_report);
      report.timestamp = e.ts;
      if (report.goal_index < 1 || report.goal_index > 3) {
        return Malformed(e, "goal_index out of range");
      }
      if (report.interactions_at_report != s.interactions_used) {
        return Malformed(e, "interactions_at_report disagrees with the log");
      }
      s.goal_reports.push_back(std::move(report));
      return absl::OkStatus();
    }
    case EventKind::kFeelingReported: {
      FeelingReport report;
      p.get_to(report.feeling);
      report.timestamp = e.ts;
      s.feeling_reports.push_back(std::move(report));
      return absl::OkStatus();
    }
    case EventKind::kBudgetExhausted:
      s.budget_exhausted_announced = true;
      return absl::OkStatus();
    case EventKind::kSessionEnded:
      s.ended = true;
      s.active_dialogue.reset();
      return absl::OkStatus();
    case EventKind::kSurveySubmitted:
      s.exit_survey = p.at("answers").get<ExitSurvey>();
      return absl::OkStatus();
  }
  return MakeError(ErrorCode::kUnsupportedEvent, "unhandled event kind");
}

}  // namespace

absl::Status ApplyEvent(SessionState& state, const SessionEvent& event) {
  if (state.ended && event.kind != EventKind::kSurveySubmitted) {
    return Malformed(event, "mutation after session end");
  }
  if (event.kind == EventKind::kSurveySubmitted && state.exit_survey) {
    return Malformed(event, "duplicate survey");
  }
  SessionState next = state;
  try {
    if (auto status = ApplyUnchecked(next, event); !status.ok()) return status;
  } catch (const std::exception& ex) {
    return Malformed(event, ex.what());
  }
  state = std::move(next);
  return absl::OkStatus();
}

absl::StatusOr<SessionState> Replay(std::span<const SessionEvent> events) {
  if (events.empty()) {
    return MakeError(ErrorCode::kMalformedLog, "empty session log");
  }
  if (events.front().kind != EventKind::kSessionCreated) {
    return MakeError(ErrorCode::kMalformedLog,
                     "session log must begin with session_created");
  }
  SessionState state;
  for (size_t i = 0; i < events.size(); ++i) {
    const SessionEvent& event = events[i];
    if (i > 0) {
      if (event.seq != events[i - 1].seq + 1) {
        return MakeError(ErrorCode::kMalformedLog,
                         absl::StrCat("seq gap: ", events[i - 1].seq, " -> ",
                                      event.seq));
      }
      if (event.session_id != events.front().session_id) {
        return MakeError(ErrorCode::kMalformedLog,
                         "log mixes events from several sessions");
      }
      if (event.kind == EventKind::kSessionCreated) {
        return Malformed(event, "second session_created");
      }
    }
    if (auto status = ApplyEvent(state, event); !status.ok()) return status;
  }
  return state;
}

}  // namespace cocreate
