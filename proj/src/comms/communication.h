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

// A Communication is one typed channel between the designer and the agent:
// a small scripted dialogue, the effect it has once complete, and the
// confidences the experience manager consults to offer it (human-initiated)
// or to raise it unprompted (agent-initiated).

#ifndef COCREATE_COMMS_COMMUNICATION_H_
#define COCREATE_COMMS_COMMUNICATION_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "context/query.h"
#include "core/types.h"

namespace cocreate {

enum class ExpectedReply {
  kFreeText,
  kInteger,
  kIntegerRange,
  kTopicString,
  kYesNo,
  kNone,  // announcement only; no reply is awaited
};

struct DialogueStep {
  // May contain {max_line}, {num_lines}, {line} (the dialogue's target line)
  // and {answer0}, {answer1}, ... (earlier normalized answers).
  std::string utterance_template;
  ExpectedReply expected = ExpectedReply::kNone;
  // Accepted integer range for kInteger / kIntegerRange. A negative
  // max_value stands for the last line index of the story.
  int min_value = 0;
  int max_value = -1;
};

struct DialogueScript {
  std::vector<DialogueStep> steps;
  // Said by the agent once the effect has been applied.
  std::string completion_utterance;
};

namespace effect {
struct Query {
  ContextQuery query;
};
struct ReportGoal {
  int goal_index = 1;
};
struct ReportFeeling {
  Feeling feeling;
};
struct EndSession {};
}  // namespace effect

using Effect = std::variant<effect::Query, effect::ReportGoal,
                            effect::ReportFeeling, effect::EndSession>;

class Communication {
 public:
  Communication(CommunicationDescriptor descriptor, DialogueScript script);
  virtual ~Communication() = default;

  Communication(const Communication&) = delete;
  Communication& operator=(const Communication&) = delete;

  const CommunicationDescriptor& descriptor() const { return descriptor_; }
  const std::string& id() const { return descriptor_.comm_id; }
  const DialogueScript& script() const { return script_; }

  // Script of the agent-initiated variant, if the communication has one.
  virtual const DialogueScript* interrupt_script() const { return nullptr; }

  // In [0, 1]. Zero once the session has ended, or when the budget is spent
  // and this communication is budgeted.
  virtual double ConfidenceToActivate(const SessionState& session) const;

  // In [0, 1]. How strongly the agent wants to raise this unprompted.
  virtual double ConfidenceToInterrupt(const SessionState& session) const;

  // Effects of a completed human-initiated dialogue. `answers` holds one
  // normalized answer per input step.
  virtual absl::StatusOr<std::vector<Effect>> Complete(
      const std::vector<std::string>& answers,
      const SessionState& session) const = 0;

  // Opens the agent-initiated dialogue. Only called when
  // ConfidenceToInterrupt cleared the manager's threshold.
  virtual std::optional<DialogueState> BeginInterrupt(
      const SessionState& session) const;

  virtual std::vector<Effect> CompleteInterrupt(const DialogueState& dialogue,
                                                bool accepted) const;

 private:
  CommunicationDescriptor descriptor_;
  DialogueScript script_;
};

// Ordered set of communications available in one session. Registration
// order is the manager's tie-break order.
class CommunicationRegistry {
 public:
  absl::Status Register(std::shared_ptr<const Communication> comm);

  const Communication* Find(std::string_view comm_id) const;
  const std::vector<std::shared_ptr<const Communication>>& all() const {
    return comms_;
  }
  size_t size() const { return comms_.size(); }

 private:
  std::vector<std::shared_ptr<const Communication>> comms_;
};

// --- Dialogue mechanics ---------------------------------------------------

const DialogueScript& ScriptFor(const Communication& comm,
                                const DialogueState& dialogue);

std::string RenderUtterance(std::string_view tmpl, const SessionState& session,
                            const DialogueState& dialogue);

// Normalizes a reply for `step` or returns nullopt when it does not parse:
// integers as decimal, ranges as "a-b" (from "a-b" or "a b"), yes/no as
// "yes"/"no", text and topics trimmed and non-empty.
std::optional<std::string> ParseReply(const DialogueStep& step,
                                      std::string_view reply, int num_lines);

struct Activation {
  // Unset when the script has no input steps: the effect runs immediately.
  std::optional<DialogueState> dialogue;
  std::string utterance;
};

// Human-initiated start. Errors: kEnded, kBusy (a dialogue is already open),
// kBudgetExhausted, kUnknownCommunication (zero activation confidence).
absl::StatusOr<Activation> Activate(const Communication& comm,
                                    const SessionState& session);

struct StepResult {
  enum class Kind { kContinue, kReprompt, kCompleted, kAborted };
  Kind kind = Kind::kContinue;
  std::string utterance;
  // Dialogue after the step; unset once completed or aborted.
  std::optional<DialogueState> next;
  // Normalized answers; complete when kind == kCompleted.
  std::vector<std::string> answers;
};

std::string_view ToString(StepResult::Kind kind);

// Feeds one user reply to the open dialogue. "cancel" (any case) aborts.
StepResult StepDialogue(const Communication& comm, const DialogueState& dialogue,
                        std::string_view reply, const SessionState& session);

}  // namespace cocreate

#endif  // COCREATE_COMMS_COMMUNICATION_H_
