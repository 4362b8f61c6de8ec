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


#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "analysis/metrics.h"
#include "analysis/report.h"
#include "analysis/stats.h"
#include "core/errors.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "test_util.h"

#ifndef COCREATE_SOURCE_FIXTURES
#define COCREATE_SOURCE_FIXTURES "fixtures"
#endif

namespace cocreate {
namespace {

using nlohmann::json;
using testing::Fixture;

// --- Distributions ------------------------------------------------------

TEST(Stats, NormalCdfMatchesHighPrecisionErf) {
  double worst = 0;
  for (int i = -60000; i <= 60000; ++i) {
    const double x = i * 1e-4;
    worst = std::max(worst, std::fabs(NormalCdf(x) - oracle::NormalCdf(x)));
  }
  EXPECT_LE(worst, 1e-7);
}

TEST(Stats, StudentTCdfAgainstIntegration) {
  for (double df : {1.0, 2.5, 4.0, 17.3, 80.0}) {
    for (double t : {-4.0, -1.2, 0.0, 0.7, 3.3}) {
      // One sample of each size gives the requested t and df only in
      // special cases, so integrate the density directly instead.
      std::vector<double> dummy;
      const double half = [&] {
        long double h = 0, b = std::fabs(t);
        const int n = 20000;
        auto f = [&](long double x) {
          return std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2) -
                          0.5L * std::log(df * M_PI) - (df + 1) / 2 * std::log1p(x * x / df));
        };
        if (b == 0) return 0.0;
        long double step = b / n, s = f(0) + f(b);
        for (int i = 1; i < n; ++i) s += (i % 2 ? 4 : 2) * f(i * step);
        h = s * step / 3;
        return static_cast<double>(h);
      }();
      const double want = t >= 0 ? 0.5 + half : 0.5 - half;
      EXPECT_NEAR(StudentTCdf(t, df), want, 1e-9) << "t=" << t << " df=" << df;
    }
  }
}

// --- Two-proportion z-test ---------------------------------------------------

TEST(ZTest, EqualRates) {
  auto one = TwoProportionZTest({0.3, 20, 0.3, 50, Sided::kOneSidedGreater});
  ASSERT_TRUE(one.ok());
  EXPECT_EQ(one->z, 0.0);
  EXPECT_DOUBLE_EQ(one->p, 0.5);
  auto two = TwoProportionZTest({0.3, 20, 0.3, 50, Sided::kTwoSided});
  EXPECT_DOUBLE_EQ(two->p, 1.0);
  auto degenerate = TwoProportionZTest({0.0, 10, 0.0, 10, Sided::kOneSidedGreater});
  EXPECT_EQ(degenerate->z, 0.0);
  EXPECT_EQ(degenerate->p, 1.0);
}

TEST(ZTest, GoalOneExample) {
  auto r = TwoProportionZTest({0.25, 28, 0.40625, 32, Sided::kOneSidedGreater});
  ASSERT_TRUE(r.ok());
  auto [z, p] = oracle::ZTestFromCounts(7, 28, 13, 32);
  EXPECT_NEAR(r->z, z, 1e-12);
  EXPECT_NEAR(r->p, p, 1e-12);
  EXPECT_NEAR(r->z, 1.3097, 5e-4);
  EXPECT_NEAR(r->p, 0.0952, 5e-4);
}

TEST(ZTest, FrustrationExample) {
  auto r = TwoProportionZTest({8.0 / 28, 28, 10.0 / 32, 32, Sided::kTwoSided});
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->p, 0.82, 0.005);
  auto [z, p] = oracle::ZTestFromCounts(8, 28, 10, 32);
  EXPECT_NEAR(r->p, 2 * std::min(p, 1 - p), 1e-12);
}

TEST(ZTest, InputValidation) {
  EXPECT_FALSE(TwoProportionZTest({0.5, 0, 0.5, 10}).ok());
  EXPECT_FALSE(TwoProportionZTest({1.5, 10, 0.5, 10}).ok());
  EXPECT_FALSE(TwoProportionZTest({0.5, 10, -0.1, 10}).ok());
}

TEST(ZTestProperty, AntisymmetryAndRange) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 5000; ++i) {
    const int n1 = 1 + rng() % 60, n2 = 1 + rng() % 60;
    const int k1 = rng() % (n1 + 1), k2 = rng() % (n2 + 1);
    for (bool pooled : {false, true}) {
      ProportionTestInput a{double(k1) / n1, n1, double(k2) / n2, n2, Sided::kOneSidedGreater};
      ProportionTestInput b{a.p2, n2, a.p1, n1, Sided::kOneSidedGreater};
      auto ra = TwoProportionZTest(a, pooled), rb = TwoProportionZTest(b, pooled);
      ASSERT_TRUE(ra.ok() && rb.ok());
      EXPECT_GE(ra->p, 0.0);
      EXPECT_LE(ra->p, 1.0);
      a.sided = Sided::kTwoSided;
      auto two = TwoProportionZTest(a, pooled);
      EXPECT_GE(two->p, 0.0);
      EXPECT_LE(two->p, 1.0);
      if (std::isfinite(ra->z) && ra->z != 0.0) {
        EXPECT_NEAR(rb->z, -ra->z, 1e-12);
        EXPECT_NEAR(rb->p, 1.0 - ra->p, 1e-12);
      }
    }
  }
}

// --- Welch -------------------------------------------------------------------

TEST(Welch, IdenticalSamples) {
  std::vector<double> a{3, 5, 7, 9};
  auto r = WelchTTest(a, a);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->t, 0.0);
  EXPECT_DOUBLE_EQ(r->p, 0.5);
}

TEST(Welch, WorkedExample) {
  std::vector<double> local{10, 9, 8}, global{5, 6, 4};
  auto r = WelchTTest(local, global);
  ASSERT_TRUE(r.ok());
  EXPECT_DOUBLE_EQ(r->mean_local, 9.0);
  EXPECT_DOUBLE_EQ(r->mean_global, 5.0);
  auto o = oracle::WelchBySimpson(local, global);
  EXPECT_NEAR(r->t, o.t, 1e-12);
  EXPECT_NEAR(r->df, o.df, 1e-12);
  EXPECT_NEAR(r->p, o.p, 1e-6);
}

TEST(Welch, NeedsTwoPerSample) {
  std::vector<double> one{1}, two{1, 2};
  EXPECT_FALSE(WelchTTest(one, two).ok());
  EXPECT_FALSE(WelchTTest(two, one).ok());
}

TEST(WelchProperty, MatchesIntegrationOracle) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> noise(0, 1);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n1 = 2 + rng() % 29, n2 = 2 + rng() % 29;
    const double shift = noise(rng), scale1 = 0.5 + (rng() % 100) / 25.0,
                 scale2 = 0.5 + (rng() % 100) / 25.0;
    std::vector<double> local, global;
    for (int i = 0; i < n1; ++i) local.push_back(8 + scale1 * noise(rng));
    for (int i = 0; i < n2; ++i) global.push_back(8 + shift + scale2 * noise(rng));
    auto r = WelchTTest(local, global);
    ASSERT_TRUE(r.ok());
    worst = std::max(worst, std::fabs(r->p - oracle::WelchBySimpson(local, global).p));
  }
  EXPECT_LE(worst, 1e-6);
}

// --- Session filtering and the best rule -----------------------------------

std::vector<SessionLogInput> ReadDir(const std::string& rel) {
  auto logs = ReadLogDir(Fixture(rel));
  EXPECT_TRUE(logs.ok()) << logs.status();
  return *logs;
}

TEST(Metrics, ShortSessionsExcluded) {
  auto filtered = FilterSessions(ReadDir("best_rule"));
  EXPECT_EQ(filtered.sessions_read, 3);
  EXPECT_EQ(filtered.sessions_dropped, 1);
  ASSERT_EQ(filtered.records.size(), 1u);
  EXPECT_EQ(filtered.records[0].participant_id, "p-best");
  EXPECT_TRUE(filtered.warnings.empty());
}

TEST(Metrics, BestRuleTakesFewestInteractions) {
  auto filtered = FilterSessions(ReadDir("best_rule"));
  for (auto rule : {BestRule::kPerMetric, BestRule::kPerSession}) {
    auto outcomes = BestOutcomes(filtered.records, rule);
    ASSERT_EQ(outcomes.size(), 1u);
    EXPECT_TRUE(outcomes[0].completed[0]);
    EXPECT_FALSE(outcomes[0].completed[1]);
    EXPECT_EQ(outcomes[0].interactions_at_report[0], 6);
  }
}

SessionSummary Summary(const std::string& id, const std::string& started,
                       std::vector<std::pair<int, int>> goals, bool frustrated = false) {
  SessionSummary s;
  s.session_id = id;
  s.participant_id = "p";
  s.condition = Condition::kLocal;
  s.started_at = started;
  s.interactions_used = 10;
  for (auto [g, at] : goals) s.goal_reports.push_back({g, at, ""});
  if (frustrated) s.feeling_reports.push_back({{FeelingKind::kFrustrated, ""}, ""});
  return s;
}

TEST(Metrics, PerMetricVersusPerSession) {
  ParticipantRecord r;
  r.participant_id = "p";
  r.condition = Condition::kLocal;
  r.qualifying_sessions = {Summary("s-1", "t1", {{1, 3}}, true),
                           Summary("s-2", "t2", {{2, 8}, {3, 9}})};
  auto metric = BestOutcomes({r}, BestRule::kPerMetric)[0];
  EXPECT_EQ(metric.completed, (std::array<bool, 3>{true, true, true}));
  EXPECT_TRUE(metric.frustrated);
  auto session = BestOutcomes({r}, BestRule::kPerSession)[0];
  EXPECT_EQ(session.completed, (std::array<bool, 3>{false, true, true}));
  EXPECT_FALSE(session.frustrated);
  EXPECT_EQ(session.interactions_at_report[1], 8);
}

TEST(Metrics, NoGoalsGivesZeroCompletion) {
  ParticipantOutcome a{"a", Condition::kLocal}, b{"b", Condition::kGlobal};
  auto counts = CompletionCounts({a, b});
  for (int g = 1; g <= 3; ++g) {
    EXPECT_EQ(counts[g].first.k, 0);
    EXPECT_EQ(counts[g].first.n, 1);
    EXPECT_EQ(counts[g].second.k, 0);
  }
  for (const auto& row : InteractionsTable({a, b})) {
    EXPECT_TRUE(row.local.empty() && row.global.empty());
    EXPECT_FALSE(row.test.has_value());
  }
}

TEST(Metrics, EmptyConditionReported) {
  std::map<int, std::pair<Proportion, Proportion>> counts{{1, {{1, 4}, {0, 0}}}};
  EXPECT_EQ(GetErrorCode(CompletionTable(counts, false).status()), ErrorCode::kEmptyCondition);
  EXPECT_EQ(GetErrorCode(FrustrationTest({1, 4}, {0, 0}, false).status()),
            ErrorCode::kEmptyCondition);
}

TEST(Metrics, SurveyHandTally) {
  auto outcomes = BestOutcomes(FilterSessions(ReadDir("surveys")).records, BestRule::kPerMetric);
  ASSERT_EQ(outcomes.size(), 6u);
  auto counts = SurveySummary(outcomes);
  using L = Likert;
  using K = SurveyKey;
  auto expect = [&](Condition c, K k, std::map<L, int> want) {
    for (L l : kAllLikert) {
      EXPECT_EQ(counts[c][k][l], want.count(l) ? want[l] : 0)
          << SurveyLabel(c, k) << " " << ToString(l);
    }
  };
  const auto loc = Condition::kLocal, gbl = Condition::kGlobal;
  expect(loc, K::kGoal1, {{L::kAgree, 2}, {L::kStronglyAgree, 1}});
  expect(loc, K::kGoal2, {{L::kNeutral, 1}, {L::kAgree, 1}, {L::kDisagree, 1}});
  expect(loc, K::kGoal3, {{L::kDisagree, 2}, {L::kStronglyDisagree, 1}});
  expect(loc, K::kSatisfaction, {{L::kAgree, 2}, {L::kNeutral, 1}});
  expect(loc, K::kFrustration, {{L::kDisagree, 1}, {L::kStronglyDisagree, 1}, {L::kAgree, 1}});
  expect(gbl, K::kGoal1, {{L::kStronglyAgree, 1}, {L::kAgree, 1}, {L::kNeutral, 1}});
  expect(gbl, K::kGoal2, {{L::kAgree, 2}, {L::kStronglyAgree, 1}});
  expect(gbl, K::kGoal3, {{L::kAgree, 2}, {L::kNeutral, 1}});
  expect(gbl, K::kSatisfaction, {{L::kStronglyAgree, 1}, {L::kAgree, 2}});
  expect(gbl, K::kFrustration, {{L::kDisagree, 1}, {L::kNeutral, 1}, {L::kStronglyDisagree, 1}});
}

TEST(Metrics, SurveyEdgeCases) {
  auto empty = SurveySummary({});
  for (auto c : {Condition::kLocal, Condition::kGlobal}) {
    for (auto k : kAllSurveyKeys) {
      for (auto l : kAllLikert) EXPECT_EQ(empty[c][k][l], 0);
    }
  }
  ExitSurvey all_agree;
  for (auto k : kAllSurveyKeys) all_agree.answers[k] = Likert::kAgree;
  ParticipantOutcome o{"p", Condition::kGlobal};
  o.exit_survey = all_agree;
  auto counts = SurveySummary({o, o, o});
  for (auto k : kAllSurveyKeys) {
    EXPECT_EQ(counts[Condition::kGlobal][k][Likert::kAgree], 3);
    EXPECT_EQ(counts[Condition::kGlobal][k][Likert::kNeutral], 0);
  }
  EXPECT_EQ(SurveyLabel(Condition::kLocal, SurveyKey::kGoal1), "Loc-G#1");
  EXPECT_EQ(SurveyLabel(Condition::kGlobal, SurveyKey::kSatisfaction), "Gbl-Sat");
}

TEST(Metrics, UnreadableLogsBecomeWarnings) {
  std::vector<SessionLogInput> logs;
  logs.push_back({"broken.jsonl", MakeError(ErrorCode::kMalformedLog, "bad line 3")});
  auto filtered = FilterSessions(logs);
  ASSERT_EQ(filtered.warnings.size(), 1u);
  EXPECT_EQ(filtered.warnings[0].source, "broken.jsonl");
}

// Report output does not depend on the order logs are read in.
TEST(MetricsProperty, OrderInvariance) {
  std::vector<SessionLogInput> logs;
  for (const char* dir : {"best_rule", "surveys"}) {
    for (auto& l : ReadDir(dir)) logs.push_back(std::move(l));
  }
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    auto run = testing::RunRandomSession(seed, seed % 2 ? Condition::kLocal : Condition::kGlobal, 90);
    for (auto& e : run.log) e.session_id = "s-rand-" + std::to_string(seed);
    logs.push_back({"rand" + std::to_string(seed), run.log});
  }
  std::mt19937_64 rng(4);
  for (auto rule : {BestRule::kPerMetric, BestRule::kPerSession}) {
    ReportOptions opts;
    opts.best_rule = rule;
    const json reference = BuildReport(FilterSessions(logs), opts);
    for (int i = 0; i < 25; ++i) {
      std::shuffle(logs.begin(), logs.end(), rng);
      EXPECT_EQ(BuildReport(FilterSessions(logs), opts), reference);
    }
  }
}

// --- Reports -------------------------------------------------------------------

json LoadJson(const std::filesystem::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

TEST(Report, SummaryCompletionTable) {
  auto summary = ParseSummaryJson(LoadJson(std::filesystem::path(COCREATE_SOURCE_FIXTURES) /
                                           "paper_table2.json"));
  ASSERT_TRUE(summary.ok()) << summary.status();
  ReportOptions opts;
  opts.report = ReportKind::kCompletion;
  auto report = BuildSummaryReport(*summary, opts);
  ASSERT_TRUE(report.ok());
  const auto& rows = (*report)["completion"]["rows"];
  ASSERT_EQ(rows.size(), 3u);
  const int k[3][4] = {{7, 28, 13, 32}, {5, 28, 8, 32}, {3, 28, 5, 32}};
  for (int g = 0; g < 3; ++g) {
    auto [z, p] = oracle::ZTestFromCounts(k[g][0], k[g][1], k[g][2], k[g][3]);
    EXPECT_NEAR(rows[g]["p"].get<double>(), p, 1e-12);
    EXPECT_NEAR(rows[g]["z"].get<double>(), z, 1e-12);
  }
  std::string md = RenderMarkdown(*report);
  for (const char* cell : {"25.0% (7/28)", "40.6% (13/32)", "17.9% (5/28)", "25.0% (8/32)",
                           "10.7% (3/28)", "15.6% (5/32)", "0.095", "0.249"}) {
    EXPECT_NE(md.find(cell), std::string::npos) << cell << "\n" << md;
  }
}

TEST(Report, SummaryRejectsLogOnlySections) {
  SummaryInput s;
  ReportOptions opts;
  opts.report = ReportKind::kSurvey;
  EXPECT_EQ(GetErrorCode(BuildSummaryReport(s, opts).status()), ErrorCode::kInvalidQuery);
  opts.report = ReportKind::kInteractions;
  EXPECT_EQ(GetErrorCode(BuildSummaryReport(s, opts).status()), ErrorCode::kInvalidQuery);
  EXPECT_FALSE(ParseSummaryJson(json{{"4", json::object()}}).ok());
  EXPECT_FALSE(ParseSummaryJson(json{{"1", {{"local", {{"k", 5}, {"n", 3}}}}}}).ok());
}

TEST(Report, InteractionsMarkdownTwoDecimals) {
  std::vector<ParticipantOutcome> outcomes;
  const double local[] = {8, 9, 9.13}, global[] = {7, 7.24};
  int i = 0;
  for (double v : local) {
    ParticipantOutcome o{"l" + std::to_string(i++), Condition::kLocal};
    o.completed[0] = true;
    o.interactions_at_report[0] = static_cast<int>(v);
    outcomes.push_back(o);
  }
  for (double v : global) {
    ParticipantOutcome o{"g" + std::to_string(i++), Condition::kGlobal};
    o.completed[0] = true;
    o.interactions_at_report[0] = static_cast<int>(v);
    outcomes.push_back(o);
  }
  auto rows = InteractionsTable(outcomes);
  ASSERT_TRUE(rows[0].test.has_value());
  EXPECT_NEAR(*rows[0].mean_local, 26.0 / 3, 1e-12);
  EXPECT_TRUE(rows[1].omitted_reason.find("at least 2") != std::string::npos);

  FilterResult f;
  ReportOptions opts;
  opts.report = ReportKind::kInteractions;
  json report = BuildReport(f, opts);
  report["interactions"]["rows"] = json::array(
      {{{"goal", 1}, {"local", {{"n", 7}, {"mean", 8.714285}}},
        {"global", {{"n", 12}, {"mean", 7.08333}}}, {"t", -1.2}, {"df", 15.2}, {"p", 0.1234}}});
  report["interactions"]["available"] = true;
  std::string md = RenderMarkdown(report);
  EXPECT_NE(md.find("8.71 (n=7)"), std::string::npos) << md;
  EXPECT_NE(md.find("7.08 (n=12)"), std::string::npos) << md;
}

TEST(Report, ScenarioStyleLogsHaveNoWarnings) {
  std::vector<SessionLogInput> logs;
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    auto run = testing::RunRandomSession(seed, seed % 2 ? Condition::kLocal : Condition::kGlobal, 60);
    for (auto& e : run.log) e.session_id = "s-" + std::to_string(seed);
    logs.push_back({"r" + std::to_string(seed), run.log});
  }
  auto report = BuildReport(FilterSessions(logs), {});
  EXPECT_TRUE(report["warnings"].empty()) << report["warnings"].dump();
  EXPECT_EQ(report["source"], "logs");
  EXPECT_EQ(report["sessions"]["read"], 8);
}

TEST(Report, BestRuleNames) {
  EXPECT_EQ(ParseBestRule("per-metric"), BestRule::kPerMetric);
  EXPECT_EQ(ParseBestRule("per-session"), BestRule::kPerSession);
  EXPECT_EQ(ParseBestRule("best"), std::nullopt);
  EXPECT_EQ(ToString(BestRule::kPerSession), "per-session");
  EXPECT_EQ(ParseReportKind("all"), ReportKind::kAll);
  EXPECT_EQ(ParseReportKind("table9"), std::nullopt);
}

}  // namespace
}  // namespace cocreate
