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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "analysis/stats.h"
#include "context/blend.h"
#include "core/replay.h"
#include "json.hpp"
#include "oracles.h"
#include "scenarios/scenario.h"
#include "test_util.h"

#ifndef COCREATE_CW_ANALYZE
#define COCREATE_CW_ANALYZE "cw-analyze"
#endif
#ifndef COCREATE_SOURCE_FIXTURES
#define COCREATE_SOURCE_FIXTURES "fixtures"
#endif
#ifndef COCREATE_SCENARIO_DIR
#define COCREATE_SCENARIO_DIR "scenarios"
#endif

namespace cocreate {
namespace {

using nlohmann::json;

constexpr double kTable2Expected[3] = {0.095, 0.249, 0.285};
constexpr double kTable2Tolerance = 0.0005;
constexpr double kTable2MaxSeconds = 1.0;
constexpr double kFrustrationExpected = 0.82;
constexpr double kFrustrationTolerance = 0.005;
constexpr double kWelchTolerance = 1e-6;
constexpr int kWelchSamples = 100;
constexpr double kPhiTolerance = 1e-7;
constexpr double kPhiStep = 1e-4;
constexpr double kBlendTolerance = 1e-9;
constexpr int kBlendSketches = 1000;
constexpr int kFreezeInterleavings = 1000;
constexpr int kBudget = 15;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void Report(int id, std::string_view name, const Outcome& o) {
  std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << ". " << name << ": " << o.detail
            << "\n";
  if (!o.pass) ++failures;
}

struct CommandOutput {
  int status = -1;
  std::string out;
  double seconds = 0;
};

CommandOutput RunCommand(const std::string& cmd) {
  CommandOutput result;
  const auto start = std::chrono::steady_clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return result;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
  result.status = pclose(pipe);
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

absl::StatusOr<json> AnalyzeSummary(const std::string& report, double* seconds) {
  const std::string cmd =
      absl::StrCat("'", COCREATE_CW_ANALYZE, "' --summary '", COCREATE_SOURCE_FIXTURES,
                   "/paper_table2.json' --report ", report, " --format json");
  CommandOutput r = RunCommand(cmd);
  *seconds = r.seconds;
  if (r.status != 0) return absl::InternalError(absl::StrCat("cw-analyze exited ", r.status));
  json j = json::parse(r.out, nullptr, false);
  if (j.is_discarded()) return absl::InternalError("cw-analyze printed invalid JSON");
  return j;
}

Outcome CompletionPValues(const absl::StatusOr<json>& report, double seconds) {
  if (!report.ok()) return {false, std::string(report.status().message())};
  const json& rows = (*report)["completion"]["rows"];
  if (!rows.is_array() || rows.size() != 3) return {false, "completion table missing"};
  Outcome o{true, ""};
  for (int g = 0; g < 3; ++g) {
    const double p = rows[g]["p"].get<double>();
    const bool ok = std::fabs(p - kTable2Expected[g]) <= kTable2Tolerance;
    o.pass &= ok;
    absl::StrAppend(&o.detail, "goal ", g + 1, " p=", absl::StrFormat("%.6f", p),
                    " (want ", kTable2Expected[g], ok ? ") " : ", out of tolerance) ");
  }
  o.pass &= seconds < kTable2MaxSeconds;
  absl::StrAppend(&o.detail, "runtime ", absl::StrFormat("%.3f", seconds), " s");
  return o;
}

Outcome FrustrationPValue(const absl::StatusOr<json>& report) {
  if (!report.ok()) return {false, std::string(report.status().message())};
  const json& f = (*report)["frustration"];
  if (!f.value("available", false)) return {false, "frustration test missing"};
  const double p = f["p"].get<double>();
  return {std::fabs(p - kFrustrationExpected) <= kFrustrationTolerance,
          absl::StrFormat("8/28 vs 10/32 two-sided p=%.5f", p)};
}

Outcome StatisticsOracle() {
  std::mt19937_64 rng(20260101);
  std::normal_distribution<double> noise(0, 1);
  double worst_welch = 0;
  for (int trial = 0; trial < kWelchSamples; ++trial) {
    const int n1 = 2 + static_cast<int>(rng() % 29), n2 = 2 + static_cast<int>(rng() % 29);
    const double shift = noise(rng);
    std::vector<double> local, global;
    for (int i = 0; i < n1; ++i) local.push_back(8 + 2 * noise(rng));
    for (int i = 0; i < n2; ++i) global.push_back(8 + shift + 3 * noise(rng));
    auto r = WelchTTest(local, global);
    if (!r.ok()) return {false, "Welch test rejected a valid sample"};
    worst_welch = std::max(worst_welch, std::fabs(r->p - oracle::WelchBySimpson(local, global).p));
  }
  double worst_phi = 0;
  const int steps = static_cast<int>(std::lround(6.0 / kPhiStep));
  for (int i = -steps; i <= steps; ++i) {
    const double x = i * kPhiStep;
    worst_phi = std::max(worst_phi, std::fabs(NormalCdf(x) - oracle::NormalCdf(x)));
  }
  return {worst_welch <= kWelchTolerance && worst_phi <= kPhiTolerance,
          absl::StrFormat("Welch max |dp|=%.2e over %d samples, Phi max |d|=%.2e", worst_welch,
                          kWelchSamples, worst_phi)};
}

Outcome BlendOracle() {
  static const char* kTopics[] = {"business", "sports", "science", "romance", "crime"};
  std::mt19937_64 rng(4242);
  double worst = 0;
  for (int trial = 0; trial < kBlendSketches; ++trial) {
    const int num_lines = 2 + static_cast<int>(rng() % 30);
    SketchSpec s;
    s.sigma = 0.5 + static_cast<double>(rng() % 80) / 20.0;
    std::vector<oracle::Point> pts;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      int a = static_cast<int>(rng() % num_lines), b = static_cast<int>(rng() % num_lines);
      if (a > b) std::swap(a, b);
      const char* topic = kTopics[rng() % std::size(kTopics)];
      s.control_points.push_back({topic, a, b});
      pts.push_back({topic, a, b});
    }
    const int line = static_cast<int>(rng() % num_lines);
    auto got = BlendWeights(line, s);
    if (!got.ok()) return {false, "blend rejected a valid sketch"};
    auto want = oracle::BlendWeights(line, pts, s.sigma);
    if (got->size() != want.size()) return {false, "topic sets differ"};
    for (const auto& [topic, w] : *got) {
      worst = std::max(worst, std::fabs(w - static_cast<double>(want[topic])));
    }
  }
  // Exact cases: a lone topic owns every line; two mirrored points split the
  // midpoint evenly.
  SketchSpec single{{{"sports", 2, 5}}, 2.0};
  bool exact = true;
  for (int line = 0; line < 10; ++line) {
    auto w = BlendWeights(line, single);
    exact &= w.ok() && w->size() == 1 && w->at("sports") == 1.0;
  }
  SketchSpec mirrored{{{"a", 1, 1}, {"b", 7, 7}}, 2.0};
  auto mid = BlendWeights(4, mirrored);
  exact &= mid.ok() && mid->at("a") == 0.5 && mid->at("b") == 0.5;
  return {worst <= kBlendTolerance && exact,
          absl::StrFormat("max |dw|=%.2e over %d sketches, exact cases %s", worst,
                          kBlendSketches, exact ? "hold" : "broken")};
}

Outcome FreezeConservation() {
  auto run = oracle::FreezeInterleavings(kFreezeInterleavings, 777);
  return {run.violations == 0 && run.sequences == kFreezeInterleavings,
          absl::StrCat(run.sequences, " interleavings, ", run.regenerations,
                       " regenerations, ", run.violations, " violations")};
}

absl::StatusOr<ScenarioReport> RunNamed(const std::string& name, bool determinism) {
  auto scenario =
      LoadScenarioFile(std::filesystem::path(COCREATE_SCENARIO_DIR) / (name + ".json"));
  if (!scenario.ok()) return scenario.status();
  testing::TempDir dir;
  ServiceConfig config;
  config.log_dir = dir.path();
  config.condition_assignment.seed = 42;
  return RunScenarioInProcess(*scenario, config, determinism);
}

int CountKind(const std::vector<SessionEvent>& log, EventKind kind) {
  return static_cast<int>(
      std::count_if(log.begin(), log.end(), [&](const SessionEvent& e) { return e.kind == kind; }));
}

std::optional<std::string> ErrorCodeIn(const TranscriptEntry& entry) {
  for (const auto& m : entry.received) {
    if (m.value("type", "") == "error") return m.value("code", "");
  }
  return std::nullopt;
}

Outcome BudgetBurn() {
  auto report = RunNamed("budget_burn", false);
  if (!report.ok()) return {false, std::string(report.status().message())};
  int accepted = 0, refused_after = 0, feedback_ok = 0;
  bool sixteenth_refused = false;
  for (const auto& entry : report->script.transcript) {
    if (entry.sent.value("type", "") != "comm.select") continue;
    const std::string comm = entry.sent.value("comm_id", "");
    const auto err = ErrorCodeIn(entry);
    if (comm == "regenerate" || comm == "user_sketch") {
      if (!err) {
        ++accepted;
      } else if (*err == "budget_exhausted") {
        if (accepted == kBudget && refused_after == 0) sixteenth_refused = true;
        ++refused_after;
      }
    } else if (comm == "goal_complete" || comm == "feeling") {
      if (!err && accepted == kBudget) ++feedback_ok;
    }
  }
  const int exhausted = CountKind(report->log, EventKind::kBudgetExhausted);
  const bool pass = report->passed() && accepted == kBudget && sixteenth_refused &&
                    feedback_ok > 0 && exhausted == 1;
  return {pass, absl::StrCat(accepted, " accepted, 16th ",
                             sixteenth_refused ? "refused" : "not refused", ", ", feedback_ok,
                             " feedback activations after exhaustion, ", exhausted,
                             " budget_exhausted event(s)")};
}

// Every offer follows the story update of an edit to the same line, and no
// edit draws more than one offer.
std::string CheckOffers(const std::vector<SessionEvent>& log, int* edits, int* offers) {
  std::optional<int> pending_edit;
  for (size_t i = 0; i < log.size(); ++i) {
    const auto& e = log[i];
    if (e.kind == EventKind::kQueryExecuted && e.payload["query"].value("type", "") == "edit_line") {
      ++*edits;
      pending_edit = e.payload["query"]["index"].get<int>();
      continue;
    }
    if (e.kind == EventKind::kInterruptOffered) {
      ++*offers;
      const bool after_update = i >= 2 && log[i - 1].kind == EventKind::kStoryUpdated &&
                                log[i - 2].kind == EventKind::kQueryExecuted;
      if (!pending_edit || !after_update) return absl::StrCat("offer at seq ", e.seq, " not right after an edit");
      if (e.payload["dialogue"].value("target_line", -1) != *pending_edit) {
        return absl::StrCat("offer at seq ", e.seq, " targets the wrong line");
      }
      pending_edit.reset();
      continue;
    }
    if (e.kind != EventKind::kStoryUpdated) pending_edit.reset();
  }
  return "";
}

Outcome InterruptTiming() {
  auto report = RunNamed("local_edit_freeze_interrupt", false);
  if (!report.ok()) return {false, std::string(report.status().message())};
  int edits = 0, offers = 0;
  std::string problem = CheckOffers(report->log, &edits, &offers);
  const bool scripted = report->passed() && problem.empty() && edits == 2 && offers == 2;
  int random_edits = 0, random_offers = 0, global_offers = 0;
  for (uint64_t seed = 1; seed <= 40 && problem.empty(); ++seed) {
    auto local = testing::RunRandomSession(seed, Condition::kLocal, 150);
    problem = CheckOffers(local.log, &random_edits, &random_offers);
    auto global = testing::RunRandomSession(seed, Condition::kGlobal, 150);
    global_offers += CountKind(global.log, EventKind::kInterruptOffered);
  }
  for (const char* name : {"global_happy_path", "global_two_sketch_goals", "budget_burn"}) {
    auto g = RunNamed(name, false);
    if (g.ok()) global_offers += CountKind(g->log, EventKind::kInterruptOffered);
  }
  const bool pass = scripted && problem.empty() && global_offers == 0 && random_offers > 0;
  return {pass, absl::StrCat("scenario ", edits, " edits / ", offers, " offers; random local ",
                             random_edits, " edits / ", random_offers, " offers; global offers ",
                             global_offers, problem.empty() ? "" : "; " + problem)};
}

Outcome LogFidelity() {
  auto all = LoadScenarioDir(COCREATE_SCENARIO_DIR);
  if (!all.ok()) return {false, std::string(all.status().message())};
  int ok = 0;
  std::string problems;
  for (const auto& s : *all) {
    auto first = RunNamed(s.name, false);
    auto second = RunNamed(s.name, false);
    if (!first.ok() || !second.ok()) {
      absl::StrAppend(&problems, " ", s.name, ": run failed;");
      continue;
    }
    // The scenario runner compares the replayed log with the live state
    // fetched from the service; its failure list carries that verdict.
    bool good = first->passed() && Replay(first->log).ok();
    good &= NormalizeLog(first->log) == NormalizeLog(second->log);
    if (good) {
      ++ok;
    } else {
      absl::StrAppend(&problems, " ", s.name, ";");
    }
  }
  int random_ok = 0;
  constexpr int kRandomRuns = 50;
  for (uint64_t seed = 1; seed <= kRandomRuns; ++seed) {
    const Condition c = seed % 2 ? Condition::kLocal : Condition::kGlobal;
    auto a = testing::RunRandomSession(seed, c, 120);
    auto b = testing::RunRandomSession(seed, c, 120);
    auto replayed = Replay(a.log);
    if (replayed.ok() && *replayed == a.final_state && a.log == b.log) ++random_ok;
  }
  const int total = static_cast<int>(all->size());
  return {ok == total && random_ok == kRandomRuns && total > 0,
          absl::StrCat(ok, "/", total, " scenarios and ", random_ok, "/", kRandomRuns,
                       " random sessions replay to the live state and repeat exactly",
                       problems.empty() ? "" : "; failing:" + problems)};
}

}  // namespace
}  // namespace cocreate

int main() {
  using namespace cocreate;
  double seconds = 0;
  auto completion = AnalyzeSummary("completion", &seconds);
  Report(1, "completion table from counts", CompletionPValues(completion, seconds));
  auto frustration = AnalyzeSummary("frustration", &seconds);
  Report(2, "frustration z-test", FrustrationPValue(frustration));
  Report(3, "statistics against oracles", StatisticsOracle());
  Report(4, "topic blend against closed form", BlendOracle());
  Report(5, "frozen lines survive regeneration", FreezeConservation());
  Report(6, "interaction budget", BudgetBurn());
  Report(7, "freeze interrupt timing", InterruptTiming());
  Report(8, "log fidelity", LogFidelity());
  std::cout << (8 - failures) << "/8 criteria passed\n";
  return failures == 0 ? 0 : 1;
}
