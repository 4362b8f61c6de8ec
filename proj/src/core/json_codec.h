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

// nlohmann::json adapters for the core types. `from_json` throws
// nlohmann::json::exception (or std::invalid_argument for bad enum names);
// callers at trust boundaries catch and convert to a Status.

#ifndef COCREATE_CORE_JSON_CODEC_H_
#define COCREATE_CORE_JSON_CODEC_H_

#include "core/types.h"
#include "json.hpp"

namespace cocreate {

using json = nlohmann::json;

void to_json(json& j, Initiator v);
void from_json(const json& j, Initiator& v);
void to_json(json& j, Mode v);
void from_json(const json& j, Mode& v);
void to_json(json& j, Scope v);
void from_json(const json& j, Scope& v);
void to_json(json& j, Condition v);
void from_json(const json& j, Condition& v);
void to_json(json& j, Likert v);
void from_json(const json& j, Likert& v);

void to_json(json& j, const OntologyTags& v);
void from_json(const json& j, OntologyTags& v);
void to_json(json& j, const Line& v);
void from_json(const json& j, Line& v);
void to_json(json& j, const StoryDocument& v);
void from_json(const json& j, StoryDocument& v);
// {"topic", "start", "end"}; the same shape is used on every wire.
void to_json(json& j, const ControlPoint& v);
void from_json(const json& j, ControlPoint& v);
void to_json(json& j, const SketchSpec& v);
void from_json(const json& j, SketchSpec& v);
void to_json(json& j, const CommunicationDescriptor& v);
void from_json(const json& j, CommunicationDescriptor& v);
void to_json(json& j, const DialogueState& v);
void from_json(const json& j, DialogueState& v);
void to_json(json& j, const Feeling& v);
void from_json(const json& j, Feeling& v);
void to_json(json& j, const GoalReport& v);
void from_json(const json& j, GoalReport& v);
void to_json(json& j, const FeelingReport& v);
void from_json(const json& j, FeelingReport& v);
// {"goal1": "agree", ...}; requires exactly the five statement keys.
void to_json(json& j, const ExitSurvey& v);
void from_json(const json& j, ExitSurvey& v);
void to_json(json& j, const ConditionAssignment& v);
void from_json(const json& j, ConditionAssignment& v);
void to_json(json& j, const SessionState& v);
void from_json(const json& j, SessionState& v);

}  // namespace cocreate

#endif  // COCREATE_CORE_JSON_CODEC_H_
