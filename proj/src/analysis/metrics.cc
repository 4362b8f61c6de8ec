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

#include "analysis/metrics.h"

#include <algorithm>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "core/enum_names.h"
#include "core/errors.h"
#include "core/replay.h"
#include "core/strings.h"
#include "service/event_log.h"

namespace cocreate {

template <>
struct EnumNames<BestRule> {
  static constexpr std::pair<BestRule, std::string_view> kTable[] = {
      {BestRule::kPerMetric, "per-metric"},
      {BestRule::kPerSession, "per-session"},
  };
};

std::string_view ToString(BestRule rule) { return EnumToString(rule); }
std::optional<BestRule> ParseBestRule(std::string_view s) {
  return EnumFromString<BestRule>(s);
}

namespace {

bool SessionBefore(const SessionSummary& a, const SessionSummary& b) {
  return std::tie(a.started_at, a.session_id) < std::tie(b.started_at, b.session_id);
}

// Interactions at the first report of each goal within one session.
std::array<std::optional<int>, kNumGoals> GoalInteractions(const SessionSummary& s) {
  std::array<std::optional<int>, kNumGoals> out{};
  for (const auto& r : s.goal_reports) {
    auto& slot = out[r.goal_index - 1];
    if (!slot || r.interactions_at_report < *slot) slot = r.interactions_at_report;
  }
  return out;
}

bool Frustrated(const SessionSummary& s) {
  return std::any_of(s.feeling_reports.begin(), s.feeling_reports.end(),
                     [](const FeelingReport& f) {
                       return f.feeling.kind == FeelingKind::kFrustrated;
                     });
}

ParticipantOutcome FromSession(const ParticipantRecord& record,
                               const SessionSummary& s) {
  ParticipantOutcome o;
  o.participant_id = record.participant_id;
  o.condition = record.condition;
  o.interactions_at_report = GoalInteractions(s);
  for (int g = 0; g < kNumGoals; ++g) o.completed[g] = o.interactions_at_report[g].has_value();
  o.frustrated = Frustrated(s);
  o.exit_survey = s.exit_survey;
  return o;
}

ParticipantOutcome PerMetric(const ParticipantRecord& record) {
  ParticipantOutcome o;
  o.participant_id = record.participant_id;
  o.condition = record.condition;
  for (const auto& s : record.qualifying_sessions) {
    const auto goals = GoalInteractions(s);
    for (int g = 0; g < kNumGoals; ++g) {
      if (!goals[g]) continue;
      o.completed[g] = true;
      auto& best = o.interactions_at_report[g];
      if (!best || *goals[g] < *best) best = goals[g];
    }
    o.frustrated = o.frustrated || Frustrated(s);
    // Sessions are in start order, so the latest survey wins.
    if (s.exit_survey) o.exit_survey = s.exit_survey;
  }
  return o;
}

ParticipantOutcome PerSession(const ParticipantRecord& record) {
  const SessionSummary* best = nullptr;
  int best_goals = -1;
  int best_sum = 0;
  for (const auto& s : record.qualifying_sessions) {
    const auto goals = GoalInteractions(s);
    int n = 0;
    int sum = 0;
    for (const auto& g : goals) {
      if (g) {
        ++n;
        sum += *g;
      }
    }
    if (best == nullptr || n > best_goals ||
        (n == best_goals && (sum < best_sum ||
                             (sum == best_sum && s.session_id < best->session_id)))) {
      best = &s;
      best_goals = n;
      best_sum = sum;
    }
  }
  return FromSession(record, *best);
}

}  // namespace

absl::StatusOr<SessionSummary> SummarizeSession(std::span<const SessionEvent> events) {
  auto state = Replay(events);
  if (!state.ok()) return state.status();
  SessionSummary s;
  s.session_id = state->session_id;
  s.participant_id = state->participant_id;
  s.condition = state->condition;
  s.started_at = events.front().ts;
  s.interactions_used = state->interactions_used;
  s.goal_reports = std::move(state->goal_reports);
  s.feeling_reports = std::move(state->feeling_reports);
  s.exit_survey = std::move(state->exit_survey);
  return s;
}

FilterResult FilterSessions(const std::vector<SessionLogInput>& logs) {
  FilterResult result;
  std::map<std::pair<std::string, Condition>, ParticipantRecord> by_participant;
  for (const auto& log : logs) {
    ++result.sessions_read;
    if (!log.events.ok()) {
      result.warnings.push_back({log.source, std::string(Message(log.events.status()))});
      continue;
    }
    auto summary = SummarizeSession(*log.events);
    if (!summary.ok()) {
      result.warnings.push_back({log.source, std::string(Message(summary.status()))});
      continue;
    }
    if (summary->interactions_used < kMinQualifyingInteractions) {
      ++result.sessions_dropped;
      continue;
    }
    auto& record = by_participant[{summary->participant_id, summary->condition}];
    record.participant_id = summary->participant_id;
    record.condition = summary->condition;
    record.qualifying_sessions.push_back(*std::move(summary));
  }
  for (auto& [key, record] : by_participant) {
    std::sort(record.qualifying_sessions.begin(), record.qualifying_sessions.end(),
              SessionBefore);
    result.records.push_back(std::move(record));
  }
  return result;
}

absl::StatusOr<std::vector<SessionLogInput>> ReadLogDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  if (ec) {
    return absl::NotFoundError(absl::StrCat("cannot read ", dir.string(), ": ",
                                            ec.message()));
  }
  std::sort(files.begin(), files.end());
  std::vector<SessionLogInput> logs;
  for (const auto& f : files) logs.push_back({f.filename().string(), LoadEventLog(f)});
  return logs;
}

std::vector<ParticipantOutcome> BestOutcomes(
    const std::vector<ParticipantRecord>& records, BestRule rule) {
  std::vector<ParticipantOutcome> out;
  for (const auto& r : records) {
    if (r.qualifying_sessions.empty()) continue;
    out.push_back(rule == BestRule::kPerMetric ? PerMetric(r) : PerSession(r));
  }
  return out;
}

std::map<int, std::pair<Proportion, Proportion>> CompletionCounts(
    const std::vector<ParticipantOutcome>& outcomes) {
  std::map<int, std::pair<Proportion, Proportion>> counts;
  for (int g = 1; g <= kNumGoals; ++g) counts[g];
  for (const auto& o : outcomes) {
    for (int g = 1; g <= kNumGoals; ++g) {
      Proportion& p = o.condition == Condition::kLocal ? counts[g].first : counts[g].second;
      ++p.n;
      if (o.completed[g - 1]) ++p.k;
    }
  }
  return counts;
}

absl::StatusOr<std::vector<CompletionRow>> CompletionTable(
    const std::map<int, std::pair<Proportion, Proportion>>& counts, bool pooled) {
  std::vector<CompletionRow> rows;
  for (const auto& [goal, pair] : counts) {
    const auto& [local, global] = pair;
    if (local.n == 0 || global.n == 0) {
      return MakeError(ErrorCode::kEmptyCondition,
                       absl::StrCat("goal ", goal, ": the ",
                                    local.n == 0 ? "local" : "global",
                                    " condition has no participants"));
    }
    auto test = TwoProportionZTest(
        {local.rate(), local.n, global.rate(), global.n, Sided::kOneSidedGreater}, pooled);
    if (!test.ok()) return test.status();
    rows.push_back({goal, local, global, *test});
  }
  return rows;
}

std::vector<InteractionsRow> InteractionsTable(
    const std::vector<ParticipantOutcome>& outcomes) {
  std::vector<InteractionsRow> rows;
  for (int g = 1; g <= kNumGoals; ++g) {
    InteractionsRow row;
    row.goal = g;
    for (const auto& o : outcomes) {
      if (!o.interactions_at_report[g - 1]) continue;
      auto& v = o.condition == Condition::kLocal ? row.local : row.global;
      v.push_back(*o.interactions_at_report[g - 1]);
    }
    auto mean = [](const std::vector<double>& v) -> std::optional<double> {
      if (v.empty()) return std::nullopt;
      double sum = 0;
      for (double x : v) sum += x;
      return sum / v.size();
    };
    row.mean_local = mean(row.local);
    row.mean_global = mean(row.global);
    if (row.local.size() < 2 || row.global.size() < 2) {
      row.omitted_reason = absl::StrCat(
          "needs at least 2 reporters per condition (local ", row.local.size(),
          ", global ", row.global.size(), ")");
    } else if (auto test = WelchTTest(row.local, row.global); test.ok()) {
      row.test = *test;
    } else {
      row.omitted_reason = std::string(Message(test.status()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::pair<Proportion, Proportion> FrustrationCounts(
    const std::vector<ParticipantOutcome>& outcomes) {
  Proportion local;
  Proportion global;
  for (const auto& o : outcomes) {
    Proportion& p = o.condition == Condition::kLocal ? local : global;
    ++p.n;
    if (o.frustrated) ++p.k;
  }
  return {local, global};
}

absl::StatusOr<FrustrationResult> FrustrationTest(const Proportion& local,
                                                  const Proportion& global,
                                                  bool pooled) {
  if (local.n == 0 || global.n == 0) {
    return MakeError(ErrorCode::kEmptyCondition,
                     absl::StrCat("the ", local.n == 0 ? "local" : "global",
                                  " condition has no participants"));
  }
  auto test = TwoProportionZTest(
      {local.rate(), local.n, global.rate(), global.n, Sided::kTwoSided}, pooled);
  if (!test.ok()) return test.status();
  return FrustrationResult{local, global, *test};
}

SurveyCounts SurveySummary(const std::vector<ParticipantOutcome>& outcomes) {
  SurveyCounts counts;
  for (Condition c : {Condition::kLocal, Condition::kGlobal}) {
    for (SurveyKey k : kAllSurveyKeys) {
      for (Likert l : kAllLikert) counts[c][k][l] = 0;
    }
  }
  for (const auto& o : outcomes) {
    if (!o.exit_survey) continue;
    for (const auto& [key, value] : o.exit_survey->answers) ++counts[o.condition][key][value];
  }
  return counts;
}

std::string SurveyLabel(Condition condition, SurveyKey key) {
  const std::string_view c = condition == Condition::kLocal ? "Loc" : "Gbl";
  std::string_view k;
  switch (key) {
    case SurveyKey::kGoal1: k = "G#1"; break;
    case SurveyKey::kGoal2: k = "G#2"; break;
    case SurveyKey::kGoal3: k = "G#3"; break;
    case SurveyKey::kSatisfaction: k = "Sat"; break;
    case SurveyKey::kFrustration: k = "Fru"; break;
  }
  return absl::StrCat(Av(c), "-", Av(k));
}

}  // namespace cocreate
