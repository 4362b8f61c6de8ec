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

#include "core/types.h"

#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "core/enum_names.h"
#include "core/errors.h"

namespace cocreate {

template <>
struct EnumNames<Initiator> {
  static constexpr std::pair<Initiator, std::string_view> kTable[] = {
      {Initiator::kHuman, "human"}, {Initiator::kAgent, "agent"}};
};
template <>
struct EnumNames<Mode> {
  static constexpr std::pair<Mode, std::string_view> kTable[] = {
      {Mode::kElaboration, "elaboration"}, {Mode::kReflection, "reflection"}};
};
template <>
struct EnumNames<Scope> {
  static constexpr std::pair<Scope, std::string_view> kTable[] = {
      {Scope::kGlobal, "global"},
      {Scope::kLocal, "local"},
      {Scope::kRegional, "regional"}};
};
template <>
struct EnumNames<Condition> {
  static constexpr std::pair<Condition, std::string_view> kTable[] = {
      {Condition::kGlobal, "global"}, {Condition::kLocal, "local"}};
};
template <>
struct EnumNames<FeelingKind> {
  static constexpr std::pair<FeelingKind, std::string_view> kTable[] = {
      {FeelingKind::kFrustrated, "frustrated"},
      {FeelingKind::kSatisfied, "satisfied"},
      {FeelingKind::kNeutral, "neutral"},
      {FeelingKind::kOther, "other"}};
};
template <>
struct EnumNames<Likert> {
  static constexpr std::pair<Likert, std::string_view> kTable[] = {
      {Likert::kStronglyDisagree, "strongly_disagree"},
      {Likert::kDisagree, "disagree"},
      {Likert::kNeutral, "neutral"},
      {Likert::kAgree, "agree"},
      {Likert::kStronglyAgree, "strongly_agree"}};
};
template <>
struct EnumNames<SurveyKey> {
  static constexpr std::pair<SurveyKey, std::string_view> kTable[] = {
      {SurveyKey::kGoal1, "goal1"},
      {SurveyKey::kGoal2, "goal2"},
      {SurveyKey::kGoal3, "goal3"},
      {SurveyKey::kSatisfaction, "satisfaction"},
      {SurveyKey::kFrustration, "frustration"}};
};
template <>
struct EnumNames<AssignmentMode> {
  static constexpr std::pair<AssignmentMode, std::string_view> kTable[] = {
      {AssignmentMode::kRandom, "random"}, {AssignmentMode::kForced, "forced"}};
};

std::string_view ToString(Initiator v) { return EnumToString(v); }
std::string_view ToString(Mode v) { return EnumToString(v); }
std::string_view ToString(Scope v) { return EnumToString(v); }
std::string_view ToString(Condition v) { return EnumToString(v); }
std::string_view ToString(FeelingKind v) { return EnumToString(v); }
std::string_view ToString(Likert v) { return EnumToString(v); }
std::string_view ToString(SurveyKey v) { return EnumToString(v); }
std::string_view ToString(AssignmentMode v) { return EnumToString(v); }

std::optional<Initiator> ParseInitiator(std::string_view s) {
  return EnumFromString<Initiator>(s);
}
std::optional<Mode> ParseMode(std::string_view s) {
  return EnumFromString<Mode>(s);
}
std::optional<Scope> ParseScope(std::string_view s) {
  return EnumFromString<Scope>(s);
}
std::optional<Condition> ParseCondition(std::string_view s) {
  return EnumFromString<Condition>(s);
}
std::optional<FeelingKind> ParseFeelingKind(std::string_view s) {
  return EnumFromString<FeelingKind>(s);
}
std::optional<Likert> ParseLikert(std::string_view s) {
  return EnumFromString<Likert>(s);
}
std::optional<SurveyKey> ParseSurveyKey(std::string_view s) {
  return EnumFromString<SurveyKey>(s);
}
std::optional<AssignmentMode> ParseAssignmentMode(std::string_view s) {
  return EnumFromString<AssignmentMode>(s);
}

StoryDocument StoryDocument::Empty(int num_lines) {
  StoryDocument doc;
  doc.lines.resize(num_lines);
  for (int i = 0; i < num_lines; ++i) doc.lines[i].index = i;
  return doc;
}

absl::Status ValidateControlPoint(const ControlPoint& point, int num_lines) {
  if (point.topic.empty() || absl::StripAsciiWhitespace(point.topic) != point.topic) {
    return MakeError(ErrorCode::kInvalidQuery,
                     absl::StrCat("topic must be non-empty and trimmed: '",
                                  point.topic, "'"));
  }
  if (point.start_line < 0 || point.start_line > point.end_line ||
      point.end_line >= num_lines) {
    return MakeError(ErrorCode::kInvalidQuery,
                     absl::StrCat("line range ", point.start_line, "-",
                                  point.end_line, " outside 0-", num_lines - 1));
  }
  return absl::OkStatus();
}

absl::Status ValidateSketch(const SketchSpec& sketch, int num_lines) {
  if (!(sketch.sigma > 0.0)) {
    return MakeError(ErrorCode::kInvalidQuery, "sigma must be positive");
  }
  for (const auto& point : sketch.control_points) {
    if (auto status = ValidateControlPoint(point, num_lines); !status.ok()) {
      return status;
    }
  }
  return absl::OkStatus();
}

}  // namespace cocreate
