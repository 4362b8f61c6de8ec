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

// Shared domain types: the communication ontology, the story artifact, the
// topic sketch and the per-session state that every other module reads.

#ifndef COCREATE_CORE_TYPES_H_
#define COCREATE_CORE_TYPES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"

namespace cocreate {

// --- Ontology -------------------------------------------------------------

enum class Initiator { kHuman, kAgent };
enum class Mode { kElaboration, kReflection };
// kRegional sits between the two poles; no built-in communication uses it.
enum class Scope { kGlobal, kLocal, kRegional };

struct OntologyTags {
  Initiator initiator = Initiator::kHuman;
  Mode mode = Mode::kElaboration;
  Scope scope = Scope::kGlobal;

  bool operator==(const OntologyTags&) const = default;
};

enum class Condition { kGlobal, kLocal };

// --- Artifact -------------------------------------------------------------

struct Line {
  int index = 0;
  std::string text;
  bool frozen = false;
  std::optional<std::string> dominant_topic;

  bool operator==(const Line&) const = default;
};

// Fixed-length numbered story. `lines[i].index == i` always holds.
struct StoryDocument {
  std::vector<Line> lines;
  int64_t generation_counter = 0;

  static StoryDocument Empty(int num_lines);

  int num_lines() const { return static_cast<int>(lines.size()); }
  bool InBounds(int index) const { return index >= 0 && index < num_lines(); }

  bool operator==(const StoryDocument&) const = default;
};

struct ControlPoint {
  std::string topic;
  int start_line = 0;
  int end_line = 0;

  double center() const { return (start_line + end_line) / 2.0; }

  bool operator==(const ControlPoint&) const = default;
};

inline constexpr double kDefaultSigma = 2.0;

struct SketchSpec {
  std::vector<ControlPoint> control_points;
  double sigma = kDefaultSigma;

  bool empty() const { return control_points.empty(); }

  bool operator==(const SketchSpec&) const = default;
};

// Checks 0 <= start <= end < num_lines and a non-empty trimmed topic.
absl::Status ValidateControlPoint(const ControlPoint& point, int num_lines);
absl::Status ValidateSketch(const SketchSpec& sketch, int num_lines);

// --- Communications -------------------------------------------------------

struct CommunicationDescriptor {
  std::string comm_id;
  std::string label;
  OntologyTags tags;
  bool counts_against_budget = true;

  bool operator==(const CommunicationDescriptor&) const = default;
};

// Progress through one communication's dialogue.
struct DialogueState {
  std::string comm_id;
  // Agent-initiated dialogues run the communication's interrupt script.
  bool interrupt = false;
  int step = 0;
  std::vector<std::string> answers;
  // Line an interrupt refers to (e.g. the line suggested for freezing).
  std::optional<int> target_line;

  bool operator==(const DialogueState&) const = default;
};

// --- Feedback -------------------------------------------------------------

struct GoalReport {
  int goal_index = 1;
  int interactions_at_report = 0;
  // RFC 3339 time of the report; informational only.
  std::string timestamp;

  bool operator==(const GoalReport&) const = default;
};

enum class FeelingKind { kFrustrated, kSatisfied, kNeutral, kOther };

struct Feeling {
  FeelingKind kind = FeelingKind::kNeutral;
  std::string other;  // only meaningful for kOther

  bool operator==(const Feeling&) const = default;
};

struct FeelingReport {
  Feeling feeling;
  std::string timestamp;

  bool operator==(const FeelingReport&) const = default;
};

enum class Likert { kStronglyDisagree, kDisagree, kNeutral, kAgree, kStronglyAgree };
enum class SurveyKey { kGoal1, kGoal2, kGoal3, kSatisfaction, kFrustration };

inline constexpr SurveyKey kAllSurveyKeys[] = {
    SurveyKey::kGoal1, SurveyKey::kGoal2, SurveyKey::kGoal3,
    SurveyKey::kSatisfaction, SurveyKey::kFrustration};
inline constexpr Likert kAllLikert[] = {
    Likert::kStronglyDisagree, Likert::kDisagree, Likert::kNeutral,
    Likert::kAgree, Likert::kStronglyAgree};

struct ExitSurvey {
  std::map<SurveyKey, Likert> answers;

  // All five statement keys present.
  bool complete() const { return answers.size() == std::size(kAllSurveyKeys); }

  bool operator==(const ExitSurvey&) const = default;
};

// --- Session --------------------------------------------------------------

inline constexpr int kDefaultNumLines = 10;
inline constexpr int kDefaultInteractionBudget = 15;

enum class AssignmentMode { kRandom, kForced };

struct ConditionAssignment {
  AssignmentMode mode = AssignmentMode::kRandom;
  uint64_t seed = 0;
  Condition forced = Condition::kGlobal;

  bool operator==(const ConditionAssignment&) const = default;
};

struct SessionState {
  std::string session_id;
  std::string participant_id;
  Condition condition = Condition::kGlobal;
  ConditionAssignment assignment;
  StoryDocument story;
  SketchSpec sketch;
  std::optional<std::string> prompt;
  // Line 0 was edited by hand after the prompt was set; the prompt no longer
  // overrides it on regeneration.
  bool prompt_overridden = false;
  int interactions_used = 0;
  int interaction_budget = kDefaultInteractionBudget;
  std::optional<DialogueState> active_dialogue;
  std::vector<GoalReport> goal_reports;
  std::vector<FeelingReport> feeling_reports;
  std::optional<ExitSurvey> exit_survey;
  uint64_t rng_seed = 0;
  bool ended = false;

  // Line edited by hand during the most recent budgeted human action, if that
  // action was an edit.
  std::optional<int> last_edited_line;
  // An agent interrupt was already offered for the most recent action.
  bool interrupt_offered_for_last_action = false;
  bool budget_exhausted_announced = false;

  bool budget_exhausted() const {
    return interactions_used >= interaction_budget;
  }

  bool operator==(const SessionState&) const = default;
};

// --- Enum names (lower_snake_case on the wire) ----------------------------

std::string_view ToString(Initiator v);
std::string_view ToString(Mode v);
std::string_view ToString(Scope v);
std::string_view ToString(Condition v);
std::string_view ToString(FeelingKind v);
std::string_view ToString(Likert v);
std::string_view ToString(SurveyKey v);
std::string_view ToString(AssignmentMode v);

std::optional<Initiator> ParseInitiator(std::string_view s);
std::optional<Mode> ParseMode(std::string_view s);
std::optional<Scope> ParseScope(std::string_view s);
std::optional<Condition> ParseCondition(std::string_view s);
std::optional<FeelingKind> ParseFeelingKind(std::string_view s);
std::optional<Likert> ParseLikert(std::string_view s);
std::optional<SurveyKey> ParseSurveyKey(std::string_view s);
std::optional<AssignmentMode> ParseAssignmentMode(std::string_view s);

}  // namespace cocreate

#endif  // COCREATE_CORE_TYPES_H_
