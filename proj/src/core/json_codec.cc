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

#include "core/json_codec.h"

#include <stdexcept>
#include <string>

#include "absl/strings/str_cat.h"
#include "core/strings.h"

namespace cocreate {
namespace {

template <typename E, typename ParseFn>
E ParseOrThrow(const json& j, ParseFn parse, std::string_view what) {
  const auto name = j.get<std::string>();
  auto value = parse(name);
  if (!value) {
    throw std::invalid_argument(absl::StrCat("unknown ", Av(what), " '", name, "'"));
  }
  return *value;
}

template <typename T>
json OptionalToJson(const std::optional<T>& v) {
  return v.has_value() ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> OptionalFromJson(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

void to_json(json& j, Initiator v) { j = ToString(v); }
void from_json(const json& j, Initiator& v) {
  v = ParseOrThrow<Initiator>(j, ParseInitiator, "initiator");
}
void to_json(json& j, Mode v) { j = ToString(v); }
void from_json(const json& j, Mode& v) {
  v = ParseOrThrow<Mode>(j, ParseMode, "mode");
}
void to_json(json& j, Scope v) { j = ToString(v); }
void from_json(const json& j, Scope& v) {
  v = ParseOrThrow<Scope>(j, ParseScope, "scope");
}
void to_json(json& j, Condition v) { j = ToString(v); }
void from_json(const json& j, Condition& v) {
  v = ParseOrThrow<Condition>(j, ParseCondition, "condition");
}
void to_json(json& j, Likert v) { j = ToString(v); }
void from_json(const json& j, Likert& v) {
  v = ParseOrThrow<Likert>(j, ParseLikert, "likert value");
}

void to_json(json& j, const OntologyTags& v) {
  j = json{{"initiator", v.initiator}, {"mode", v.mode}, {"scope", v.scope}};
}
void from_json(const json& j, OntologyTags& v) {
  j.at("initiator").get_to(v.initiator);
  j.at("mode").get_to(v.mode);
  j.at("scope").get_to(v.scope);
}

void to_json(json& j, const Line& v) {
  j = json{{"index", v.index},
           {"text", v.text},
           {"frozen", v.frozen},
           {"dominant_topic", OptionalToJson(v.dominant_topic)}};
}
void from_json(const json& j, Line& v) {
  j.at("index").get_to(v.index);
  j.at("text").get_to(v.text);
  j.at("frozen").get_to(v.frozen);
  v.dominant_topic = OptionalFromJson<std::string>(j, "dominant_topic");
}

void to_json(json& j, const StoryDocument& v) {
  j = json{{"lines", v.lines}, {"generation_counter", v.generation_counter}};
}
void from_json(const json& j, StoryDocument& v) {
  j.at("lines").get_to(v.lines);
  j.at("generation_counter").get_to(v.generation_counter);
  for (size_t i = 0; i < v.lines.size(); ++i) {
    if (v.lines[i].index != static_cast<int>(i)) {
      throw std::invalid_argument("story line indices are not contiguous");
    }
  }
}

void to_json(json& j, const ControlPoint& v) {
  j = json{{"topic", v.topic}, {"start", v.start_line}, {"end", v.end_line}};
}
void from_json(const json& j, ControlPoint& v) {
  j.at("topic").get_to(v.topic);
  j.at("start").get_to(v.start_line);
  j.at("end").get_to(v.end_line);
}

void to_json(json& j, const SketchSpec& v) {
  j = json{{"control_points", v.control_points}, {"sigma", v.sigma}};
}
void from_json(const json& j, SketchSpec& v) {
  j.at("control_points").get_to(v.control_points);
  v.sigma = j.value("sigma", kDefaultSigma);
}

void to_json(json& j, const CommunicationDescriptor& v) {
  j = json{{"comm_id", v.comm_id},
           {"label", v.label},
           {"tags", v.tags},
           {"counts_against_budget", v.counts_against_budget}};
}
void from_json(const json& j, CommunicationDescriptor& v) {
  j.at("comm_id").get_to(v.comm_id);
  j.at("label").get_to(v.label);
  j.at("tags").get_to(v.tags);
  j.at("counts_against_budget").get_to(v.counts_against_budget);
}

void to_json(json& j, const DialogueState& v) {
  j = json{{"comm_id", v.comm_id},
           {"interrupt", v.interrupt},
           {"step", v.step},
           {"answers", v.answers},
           {"target_line", OptionalToJson(v.target_line)}};
}
void from_json(const json& j, DialogueState& v) {
  j.at("comm_id").get_to(v.comm_id);
  j.at("interrupt").get_to(v.interrupt);
  j.at("step").get_to(v.step);
  j.at("answers").get_to(v.answers);
  v.target_line = OptionalFromJson<int>(j, "target_line");
}

void to_json(json& j, const Feeling& v) {
  j = json{{"feeling", ToString(v.kind)}};
  if (v.kind == FeelingKind::kOther) j["text"] = v.other;
}
void from_json(const json& j, Feeling& v) {
  v.kind = ParseOrThrow<FeelingKind>(j.at("feeling"), ParseFeelingKind,
                                     "feeling");
  v.other = v.kind == FeelingKind::kOther ? j.value("text", std::string())
                                          : std::string();
}

void to_json(json& j, const GoalReport& v) {
  j = json{{"goal_index", v.goal_index},
           {"interactions_at_report", v.interactions_at_report},
           {"timestamp", v.timestamp}};
}
void from_json(const json& j, GoalReport& v) {
  j.at("goal_index").get_to(v.goal_index);
  j.at("interactions_at_report").get_to(v.interactions_at_report);
  v.timestamp = j.value("timestamp", std::string());
}

void to_json(json& j, const FeelingReport& v) {
  j = v.feeling;
  j["timestamp"] = v.timestamp;
}
void from_json(const json& j, FeelingReport& v) {
  j.get_to(v.feeling);
  v.timestamp = j.value("timestamp", std::string());
}

void to_json(json& j, const ExitSurvey& v) {
  j = json::object();
  for (const auto& [key, value] : v.answers) {
    j[std::string(ToString(key))] = value;
  }
}
void from_json(const json& j, ExitSurvey& v) {
  if (!j.is_object()) throw std::invalid_argument("survey answers must be an object");
  v.answers.clear();
  for (const auto& [key, value] : j.items()) {
    auto parsed = ParseSurveyKey(key);
    if (!parsed) {
      throw std::invalid_argument(absl::StrCat("unknown survey key '", key, "'"));
    }
    v.answers[*parsed] = value.get<Likert>();
  }
  if (!v.complete()) {
    throw std::invalid_argument("survey must answer all five statements");
  }
}

void to_json(json& j, const ConditionAssignment& v) {
  j = json{{"mode", ToString(v.mode)}, {"seed", v.seed}};
  if (v.mode == AssignmentMode::kForced) j["forced"] = v.forced;
}
void from_json(const json& j, ConditionAssignment& v) {
  v.mode = ParseOrThrow<AssignmentMode>(j.at("mode"), ParseAssignmentMode,
                                        "assignment mode");
  j.at("seed").get_to(v.seed);
  if (v.mode == AssignmentMode::kForced) j.at("forced").get_to(v.forced);
}

void to_json(json& j, const SessionState& v) {
  j = json{{"session_id", v.session_id},
           {"participant_id", v.participant_id},
           {"condition", v.condition},
           {"assignment", v.assignment},
           {"story", v.story},
           {"sketch", v.sketch},
           {"prompt", OptionalToJson(v.prompt)},
           {"prompt_overridden", v.prompt_overridden},
           {"interactions_used", v.interactions_used},
           {"interaction_budget", v.interaction_budget},
           {"active_dialogue", OptionalToJson(v.active_dialogue)},
           {"goal_reports", v.goal_reports},
           {"feeling_reports", v.feeling_reports},
           {"exit_survey", OptionalToJson(v.exit_survey)},
           {"rng_seed", v.rng_seed},
           {"ended", v.ended},
           {"last_edited_line", OptionalToJson(v.last_edited_line)},
           {"interrupt_offered_for_last_action",
            v.interrupt_offered_for_last_action},
           {"budget_exhausted_announced", v.budget_exhausted_announced}};
}
void from_json(const json& j, SessionState& v) {
  j.at("session_id").get_to(v.session_id);
  j.at("participant_id").get_to(v.participant_id);
  j.at("condition").get_to(v.condition);
  j.at("assignment").get_to(v.assignment);
  j.at("story").get_to(v.story);
  j.at("sketch").get_to(v.sketch);
  v.prompt = OptionalFromJson<std::string>(j, "prompt");
  j.at("prompt_overridden").get_to(v.prompt_overridden);
  j.at("interactions_used").get_to(v.interactions_used);
  j.at("interaction_budget").get_to(v.interaction_budget);
  v.active_dialogue = OptionalFromJson<DialogueState>(j, "active_dialogue");
  j.at("goal_reports").get_to(v.goal_reports);
  j.at("feeling_reports").get_to(v.feeling_reports);
  v.exit_survey = OptionalFromJson<ExitSurvey>(j, "exit_survey");
  j.at("rng_seed").get_to(v.rng_seed);
  j.at("ended").get_to(v.ended);
  v.last_edited_line = OptionalFromJson<int>(j, "last_edited_line");
  j.at("interrupt_offered_for_last_action")
      .get_to(v.interrupt_offered_for_last_action);
  j.at("budget_exhausted_announced").get_to(v.budget_exhausted_announced);
}

}  // namespace cocreate
