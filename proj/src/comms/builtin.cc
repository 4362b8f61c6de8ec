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

#include "comms/builtin.h"

#include <string>
#include <utility>
#include <vector>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_split.h"
#include "core/errors.h"
#include "core/strings.h"

namespace cocreate {
namespace {

CommunicationDescriptor Describe(std::string id, std::string label, Mode mode,
                                 Scope scope, bool budgeted) {
  return CommunicationDescriptor{std::move(id), std::move(label),
                                 OntologyTags{Initiator::kHuman, mode, scope},
                                 budgeted};
}

absl::StatusOr<int> AnswerInt(const std::vector<std::string>& answers, size_t i) {
  int value = 0;
  if (i >= answers.size() || !absl::SimpleAtoi(answers[i], &value)) {
    return MakeError(ErrorCode::kInvalidQuery, "missing numeric answer");
  }
  return value;
}

class UserSketchComm final : public Communication {
 public:
  UserSketchComm()
      : Communication(
            Describe(kUserSketchComm, "Set sketch topic", Mode::kElaboration,
                     Scope::kGlobal, true),
            DialogueScript{
                {{"Which topic should this part of the story be about?",
                  ExpectedReply::kTopicString},
                 {"Which lines should \"{answer0}\" cover? Reply with a range "
                  "such as 0-{max_line}.",
                  ExpectedReply::kIntegerRange}},
                "I added \"{answer0}\" over lines {answer1} to the sketch and "
                "regenerated the story."}) {}

  absl::StatusOr<std::vector<Effect>> Complete(
      const std::vector<std::string>& answers,
      const SessionState&) const override {
    if (answers.size() != 2) {
      return MakeError(ErrorCode::kInvalidQuery, "sketch needs topic and range");
    }
    std::pair<std::string, std::string> range = absl::StrSplit(answers[1], '-');
    int start = 0;
    int end = 0;
    if (!absl::SimpleAtoi(range.first, &start) ||
        !absl::SimpleAtoi(range.second, &end)) {
      return MakeError(ErrorCode::kInvalidQuery, "bad line range");
    }
    return std::vector<Effect>{
        effect::Query{query::AddSketchPoint{ControlPoint{answers[0], start, end}}},
        effect::Query{query::Regenerate{}}};
  }
};

class UserWorkComm final : public Communication {
 public:
  UserWorkComm()
      : Communication(
            Describe(kUserWorkComm, "Edit a line", Mode::kElaboration,
                     Scope::kLocal, true),
            DialogueScript{{{"Which line do you want to rewrite? (0-{max_line})",
                             ExpectedReply::kInteger},
                            {"What should line {answer0} say?",
                             ExpectedReply::kFreeText}},
                           "Line {answer0} updated."}) {}

  absl::StatusOr<std::vector<Effect>> Complete(
      const std::vector<std::string>& answers,
      const SessionState&) const override {
    auto index = AnswerInt(answers, 0);
    if (!index.ok()) return index.status();
    if (answers.size() != 2) {
      return MakeError(ErrorCode::kInvalidQuery, "edit needs a line and text");
    }
    return std::vector<Effect>{effect::Query{query::EditLine{*index, answers[1]}}};
  }
};

class GenerateWithFreezeComm final : public Communication {
 public:
  GenerateWithFreezeComm()
      : Communication(
            Describe(kGenerateWithFreezeComm, "Freeze or unfreeze a line",
                     Mode::kElaboration, Scope::kLocal, true),
            DialogueScript{
                {{"Which line should I freeze (or unfreeze if it is already "
                  "frozen)? Frozen lines are kept when the story is "
                  "regenerated. (0-{max_line})",
                  ExpectedReply::kInteger}},
                "Done."}),
        interrupt_script_{
            {{"You just edited line {line}. Shall I freeze it so it won't be "
              "overwritten when the story is regenerated? (yes/no)",
              ExpectedReply::kYesNo}},
            ""} {}

  const DialogueScript* interrupt_script() const override {
    return &interrupt_script_;
  }

  double ConfidenceToInterrupt(const SessionState& session) const override {
    return FreezeSuggestionConfidence(session);
  }

  absl::StatusOr<std::vector<Effect>> Complete(
      const std::vector<std::string>& answers,
      const SessionState& session) const override {
    auto index = AnswerInt(answers, 0);
    if (!index.ok()) return index.status();
    if (!session.story.InBounds(*index)) {
      return MakeError(ErrorCode::kInvalidQuery, "line out of range");
    }
    if (session.story.lines[*index].frozen) {
      return std::vector<Effect>{effect::Query{query::UnfreezeLine{*index}}};
    }
    return std::vector<Effect>{effect::Query{query::FreezeLine{*index}}};
  }

  std::optional<DialogueState> BeginInterrupt(
      const SessionState& session) const override {
    if (!session.last_edited_line.has_value()) return std::nullopt;
    DialogueState dialogue;
    dialogue.comm_id = id();
    dialogue.interrupt = true;
    dialogue.step = 0;
    dialogue.target_line = session.last_edited_line;
    return dialogue;
  }

  std::vector<Effect> CompleteInterrupt(const DialogueState& dialogue,
                                        bool accepted) const override {
    if (!accepted || !dialogue.target_line.has_value()) return {};
    return {effect::Query{query::FreezeLine{*dialogue.target_line}}};
  }

 private:
  DialogueScript interrupt_script_;
};

class RegenerateComm final : public Communication {
 public:
  RegenerateComm()
      : Communication(Describe(kRegenerateComm, "Regenerate the story",
                               Mode::kElaboration, Scope::kGlobal, true),
                      DialogueScript{{}, "Here is a new version of the story."}) {}

  absl::StatusOr<std::vector<Effect>> Complete(
      const std::vector<std::string>&, const SessionState&) const override {
    return std::vector<Effect>{effect::Query{query::Regenerate{}}};
  }
};

class GoalCompleteComm final : public Communication {
 public:
  GoalCompleteComm()
      : Communication(
            Describe(kGoalCompleteComm, "Report a completed sub-goal",
                     Mode::kReflection, Scope::kGlobal, false),
            DialogueScript{{{"Which sub-goal did you complete? (1, 2 or 3)",
                             ExpectedReply::kInteger, 1, 3}},
                           "Noted: sub-goal {answer0} completed."}) {}

  absl::StatusOr<std::vector<Effect>> Complete(
      const std::vector<std::string>& answers,
      const SessionState&) const override {
    auto goal = AnswerInt(answers, 0);
    if (!goal.ok()) return goal.status();
    return std::vector<Effect>{effect::ReportGoal{*goal}};
  }
};

class FeelingComm final : public Communication {
 public:
  FeelingComm()
      : Communication(
            Describe(kFeelingComm, "Tell me how you feel", Mode::kReflection,
                     Scope::kGlobal, false),
            DialogueScript{{{"How do you feel right now? (1) frustrated, (2) "
                             "satisfied, (3) neutral, or describe it in your "
                             "own words.",
                             ExpectedReply::kFreeText}},
                           "Thanks for letting me know."}) {}

  absl::StatusOr<std::vector<Effect>> Complete(
      const std::vector<std::string>& answers,
      const SessionState&) const override {
    if (answers.size() != 1) {
      return MakeError(ErrorCode::kInvalidQuery, "feeling needs one answer");
    }
    return std::vector<Effect>{effect::ReportFeeling{ParseFeeling(answers[0])}};
  }
};

class EndSessionComm final : public Communication {
 public:
  EndSessionComm()
      : Communication(Describe(kEndSessionComm, "End the session",
                               Mode::kReflection, Scope::kGlobal, false),
                      DialogueScript{{}, ""}) {}

  absl::StatusOr<std::vector<Effect>> Complete(
      const std::vector<std::string>&, const SessionState&) const override {
    return std::vector<Effect>{effect::EndSession{}};
  }
};

}  // namespace

std::shared_ptr<const Communication> MakeUserSketchComm() {
  return std::make_shared<const UserSketchComm>();
}
std::shared_ptr<const Communication> MakeUserWorkComm() {
  return std::make_shared<const UserWorkComm>();
}
std::shared_ptr<const Communication> MakeGenerateWithFreezeComm() {
  return std::make_shared<const GenerateWithFreezeComm>();
}
std::shared_ptr<const Communication> MakeRegenerateComm() {
  return std::make_shared<const RegenerateComm>();
}
std::shared_ptr<const Communication> MakeGoalCompleteComm() {
  return std::make_shared<const GoalCompleteComm>();
}
std::shared_ptr<const Communication> MakeFeelingComm() {
  return std::make_shared<const FeelingComm>();
}
std::shared_ptr<const Communication> MakeEndSessionComm() {
  return std::make_shared<const EndSessionComm>();
}

CommunicationRegistry BuiltinRegistry(Condition condition) {
  std::vector<std::shared_ptr<const Communication>> comms;
  if (condition == Condition::kGlobal) {
    comms.push_back(MakeUserSketchComm());
  } else {
    comms.push_back(MakeUserWorkComm());
    comms.push_back(MakeGenerateWithFreezeComm());
  }
  comms.push_back(MakeRegenerateComm());
  comms.push_back(MakeGoalCompleteComm());
  comms.push_back(MakeFeelingComm());
  comms.push_back(MakeEndSessionComm());

  CommunicationRegistry registry;
  for (auto& comm : comms) {
    // Built-in ids are distinct.
    (void)registry.Register(std::move(comm));
  }
  return registry;
}

double FreezeSuggestionConfidence(const SessionState& session) {
  if (session.condition != Condition::kLocal || session.ended) return 0.0;
  if (!session.last_edited_line.has_value() ||
      session.interrupt_offered_for_last_action) {
    return 0.0;
  }
  const int line = *session.last_edited_line;
  if (!session.story.InBounds(line) || session.story.lines[line].frozen) {
    return 0.0;
  }
  return 1.0;
}

Feeling ParseFeeling(std::string_view text) {
  const std::string lower =
      absl::AsciiStrToLower(absl::StripAsciiWhitespace(Av(text)));
  if (lower == "1" || lower == "frustrated") return {FeelingKind::kFrustrated, ""};
  if (lower == "2" || lower == "satisfied") return {FeelingKind::kSatisfied, ""};
  if (lower == "3" || lower == "neutral") return {FeelingKind::kNeutral, ""};
  return {FeelingKind::kOther, std::string(absl::StripAsciiWhitespace(Av(text)))};
}

}  // namespace cocreate
