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

#include "comms/communication.h"

#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "absl/strings/str_split.h"
#include "core/errors.h"
#include "core/strings.h"

namespace cocreate {
namespace {

constexpr std::string_view kRepromptPrefix = "Sorry, I didn't understand that. ";

// Finds the next step awaiting input at or after `from`, gathering the
// announcement utterances passed on the way.
std::pair<int, std::string> NextInputStep(const DialogueScript& script, int from,
                                          const SessionState& session,
                                          const DialogueState& dialogue) {
  std::string said;
  int i = from;
  for (; i < static_cast<int>(script.steps.size()); ++i) {
    const DialogueStep& step = script.steps[i];
    if (!said.empty()) said += " ";
    said += RenderUtterance(step.utterance_template, session, dialogue);
    if (step.expected != ExpectedReply::kNone) break;
  }
  return {i, said};
}

std::optional<int> ParseBoundedInt(std::string_view s, int lo, int hi) {
  s = Sv(absl::StripAsciiWhitespace(Av(s)));
  if (!s.empty() && s.front() == '#') s.remove_prefix(1);
  int value = 0;
  if (!absl::SimpleAtoi(Av(s), &value) || value < lo || value > hi) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

Communication::Communication(CommunicationDescriptor descriptor,
                             DialogueScript script)
    : descriptor_(std::move(descriptor)), script_(std::move(script)) {}

double Communication::ConfidenceToActivate(const SessionState& session) const {
  if (session.ended) return 0.0;
  if (descriptor_.counts_against_budget && session.budget_exhausted()) return 0.0;
  return 1.0;
}

double Communication::ConfidenceToInterrupt(const SessionState&) const {
  return 0.0;
}

std::optional<DialogueState> Communication::BeginInterrupt(
    const SessionState&) const {
  return std::nullopt;
}

std::vector<Effect> Communication::CompleteInterrupt(const DialogueState&,
                                                     bool) const {
  return {};
}

absl::Status CommunicationRegistry::Register(
    std::shared_ptr<const Communication> comm) {
  if (Find(comm->id()) != nullptr) {
    return absl::AlreadyExistsError(
        absl::StrCat("communication '", comm->id(), "' already registered"));
  }
  comms_.push_back(std::move(comm));
  return absl::OkStatus();
}

const Communication* CommunicationRegistry::Find(std::string_view comm_id) const {
  for (const auto& comm : comms_) {
    if (comm->id() == comm_id) return comm.get();
  }
  return nullptr;
}

const DialogueScript& ScriptFor(const Communication& comm,
                                const DialogueState& dialogue) {
  if (dialogue.interrupt && comm.interrupt_script() != nullptr) {
    return *comm.interrupt_script();
  }
  return comm.script();
}

std::string RenderUtterance(std::string_view tmpl, const SessionState& session,
                            const DialogueState& dialogue) {
  std::vector<std::pair<std::string, std::string>> subs = {
      {"{max_line}", absl::StrCat(session.story.num_lines() - 1)},
      {"{num_lines}", absl::StrCat(session.story.num_lines())},
      {"{line}", dialogue.target_line ? absl::StrCat(*dialogue.target_line)
                                      : std::string("?")},
  };
  for (size_t i = 0; i < dialogue.answers.size(); ++i) {
    subs.emplace_back(absl::StrCat("{answer", i, "}"), dialogue.answers[i]);
  }
  return absl::StrReplaceAll(Av(tmpl), subs);
}

std::optional<std::string> ParseReply(const DialogueStep& step,
                                      std::string_view reply, int num_lines) {
  const std::string_view trimmed = Sv(absl::StripAsciiWhitespace(Av(reply)));
  const int hi = step.max_value < 0 ? num_lines - 1 : step.max_value;
  switch (step.expected) {
    case ExpectedReply::kNone:
      return std::string();
    case ExpectedReply::kFreeText:
    case ExpectedReply::kTopicString:
      if (trimmed.empty()) return std::nullopt;
      return std::string(trimmed);
    case ExpectedReply::kInteger: {
      auto value = ParseBoundedInt(trimmed, step.min_value, hi);
      if (!value) return std::nullopt;
      return absl::StrCat(*value);
    }
    case ExpectedReply::kIntegerRange: {
      std::vector<absl::string_view> parts =
          absl::StrSplit(Av(trimmed), absl::ByAnyChar("- "), absl::SkipWhitespace());
      if (parts.size() == 1) parts.push_back(parts[0]);
      if (parts.size() != 2) return std::nullopt;
      auto a = ParseBoundedInt(Sv(parts[0]), step.min_value, hi);
      auto b = ParseBoundedInt(Sv(parts[1]), step.min_value, hi);
      if (!a || !b || *a > *b) return std::nullopt;
      return absl::StrCat(*a, "-", *b);
    }
    case ExpectedReply::kYesNo: {
      const std::string lower = absl::AsciiStrToLower(Av(trimmed));
      if (lower == "y" || lower == "yes") return std::string("yes");
      if (lower == "n" || lower == "no") return std::string("no");
      return std::nullopt;
    }
  }
  return std::nullopt;
}

absl::StatusOr<Activation> Activate(const Communication& comm,
                                    const SessionState& session) {
  if (session.ended) {
    return MakeError(ErrorCode::kEnded, "the session has ended");
  }
  if (session.active_dialogue.has_value()) {
    return MakeError(ErrorCode::kBusy,
                     absl::StrCat("finish or cancel '",
                                  session.active_dialogue->comm_id, "' first"));
  }
  if (comm.descriptor().counts_against_budget && session.budget_exhausted()) {
    return MakeError(ErrorCode::kBudgetExhausted,
                     absl::StrCat("all ", session.interaction_budget,
                                  " interactions have been used"));
  }
  if (comm.ConfidenceToActivate(session) <= 0.0) {
    return MakeError(ErrorCode::kUnknownCommunication,
                     absl::StrCat("'", comm.id(), "' is not available"));
  }

  DialogueState dialogue;
  dialogue.comm_id = comm.id();
  auto [step, said] = NextInputStep(comm.script(), 0, session, dialogue);
  Activation activation;
  activation.utterance = std::move(said);
  if (step < static_cast<int>(comm.script().steps.size())) {
    dialogue.step = step;
    activation.dialogue = std::move(dialogue);
  }
  return activation;
}

std::string_view ToString(StepResult::Kind kind) {
  switch (kind) {
    case StepResult::Kind::kContinue:
      return "continue";
    case StepResult::Kind::kReprompt:
      return "reprompt";
    case StepResult::Kind::kCompleted:
      return "completed";
    case StepResult::Kind::kAborted:
      return "aborted";
  }
  return "unknown";
}

StepResult StepDialogue(const Communication& comm, const DialogueState& dialogue,
                        std::string_view reply, const SessionState& session) {
  StepResult result;
  if (absl::AsciiStrToLower(absl::StripAsciiWhitespace(Av(reply))) == "cancel") {
    result.kind = StepResult::Kind::kAborted;
    result.utterance = "Okay, cancelled. Nothing was changed.";
    return result;
  }

  const DialogueScript& script = ScriptFor(comm, dialogue);
  if (dialogue.step < 0 || dialogue.step >= static_cast<int>(script.steps.size())) {
    result.kind = StepResult::Kind::kAborted;
    result.utterance = "That conversation is no longer open.";
    return result;
  }
  const DialogueStep& step = script.steps[dialogue.step];
  auto parsed = ParseReply(step, reply, session.story.num_lines());
  if (!parsed) {
    result.kind = StepResult::Kind::kReprompt;
    result.utterance = absl::StrCat(
        Av(kRepromptPrefix),
        RenderUtterance(step.utterance_template, session, dialogue));
    result.next = dialogue;
    return result;
  }

  DialogueState next = dialogue;
  next.answers.push_back(*std::move(parsed));
  auto [step_index, said] = NextInputStep(script, dialogue.step + 1, session, next);
  if (step_index >= static_cast<int>(script.steps.size())) {
    result.kind = StepResult::Kind::kCompleted;
    result.utterance = std::move(said);
    result.answers = std::move(next.answers);
    return result;
  }
  next.step = step_index;
  result.kind = StepResult::Kind::kContinue;
  result.utterance = std::move(said);
  result.next = std::move(next);
  return result;
}

}  // namespace cocreate
