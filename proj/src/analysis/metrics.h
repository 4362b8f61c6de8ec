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

#ifndef COCREATE_ANALYSIS_METRICS_H_
#define COCREATE_ANALYSIS_METRICS_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "analysis/stats.h"
#include "core/events.h"
#include "core/types.h"

namespace cocreate {

inline constexpr int kNumGoals = 3;
// Sessions with fewer budgeted interactions are not analysed.
inline constexpr int kMinQualifyingInteractions = 2;

struct SessionSummary {
  std::string session_id;
  std::string participant_id;
  Condition condition = Condition::kGlobal;
  std::string started_at;
  int interactions_used = 0;
  std::vector<GoalReport> goal_reports;
  std::vector<FeelingReport> feeling_reports;
  std::optional<ExitSurvey> exit_survey;
};

struct ParticipantRecord {
  std::string participant_id;
  Condition condition = Condition::kGlobal;
  // Ordered by start time, then session id.
  std::vector<SessionSummary> qualifying_sessions;
};

struct AnalysisWarning {
  std::string source;
  std::string message;
};

// One session log as handed to the analysis; `events` holds the load error
// when the log could not be read.
struct SessionLogInput {
  std::string source;
  absl::StatusOr<std::vector<SessionEvent>> events;
};

struct FilterResult {
  std::vector<ParticipantRecord> records;
  std::vector<AnalysisWarning> warnings;
  int sessions_read = 0;
  int sessions_dropped = 0;
};

absl::StatusOr<SessionSummary> SummarizeSession(std::span<const SessionEvent> events);

// Replays every log, drops sessions below the interaction threshold and
// groups the rest by participant and condition. Unreadable or inconsistent
// logs become warnings. Output order does not depend on input order.
FilterResult FilterSessions(const std::vector<SessionLogInput>& logs);

// Reads every *.jsonl file under `dir`, in file-name order.
absl::StatusOr<std::vector<SessionLogInput>> ReadLogDir(const std::filesystem::path& dir);

enum class BestRule {
  // Each metric takes its most favourable value across the participant's
  // sessions: a goal counts if reported anywhere, interactions take the
  // minimum, frustration counts if reported anywhere.
  kPerMetric,
  // One session stands for the participant: most distinct goals, then fewest
  // interactions summed over those goals, then lowest session id.
  kPerSession,
};

std::string_view ToString(BestRule rule);
std::optional<BestRule> ParseBestRule(std::string_view s);

struct ParticipantOutcome {
  std::string participant_id;
  Condition condition = Condition::kGlobal;
  std::array<bool, kNumGoals> completed{};
  std::array<std::optional<int>, kNumGoals> interactions_at_report{};
  bool frustrated = false;
  std::optional<ExitSurvey> exit_survey;
};

std::vector<ParticipantOutcome> BestOutcomes(
    const std::vector<ParticipantRecord>& records, BestRule rule);

struct Proportion {
  int k = 0;
  int n = 0;
  double rate() const { return n > 0 ? static_cast<double>(k) / n : 0.0; }
};

struct CompletionRow {
  int goal = 1;
  Proportion local;
  Proportion global;
  ZTestResult test;
};

// Per-goal completion rates with the one-sided test of H0: p_global <= p_local.
// kEmptyCondition when either condition has no participants.
absl::StatusOr<std::vector<CompletionRow>> CompletionTable(
    const std::map<int, std::pair<Proportion, Proportion>>& counts, bool pooled);
std::map<int, std::pair<Proportion, Proportion>> CompletionCounts(
    const std::vector<ParticipantOutcome>& outcomes);

struct InteractionsRow {
  int goal = 1;
  std::vector<double> local;
  std::vector<double> global;
  std::optional<double> mean_local;
  std::optional<double> mean_global;
  std::optional<WelchResult> test;
  std::string omitted_reason;  // set when `test` is absent
};

std::vector<InteractionsRow> InteractionsTable(
    const std::vector<ParticipantOutcome>& outcomes);

struct FrustrationResult {
  Proportion local;
  Proportion global;
  ZTestResult test;
};

// Two-sided test of local against global frustration rates.
absl::StatusOr<FrustrationResult> FrustrationTest(const Proportion& local,
                                                  const Proportion& global,
                                                  bool pooled);
std::pair<Proportion, Proportion> FrustrationCounts(
    const std::vector<ParticipantOutcome>& outcomes);

// counts[condition][key][likert]; every level present, zero-filled.
using SurveyCounts =
    std::map<Condition, std::map<SurveyKey, std::map<Likert, int>>>;

SurveyCounts SurveySummary(const std::vector<ParticipantOutcome>& outcomes);

// Short row label in the "Loc-G#1" / "Gbl-Sat" style.
std::string SurveyLabel(Condition condition, SurveyKey key);

}  // namespace cocreate

#endif  // COCREATE_ANALYSIS_METRICS_H_
