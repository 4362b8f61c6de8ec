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

#include "scenarios/scenario.h"

#include <algorithm>
#include <fstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "analysis/metrics.h"
#include "analysis/report.h"
#include "core/json_codec.h"
#include "core/replay.h"
#include "core/strings.h"

namespace cocreate {
namespace {

std::string CheckFinal(const json& check, const SessionState& state,
                       const std::vector<SessionEvent>& log) {
  if (!check.is_object() || check.size() != 1) {
    return absl::StrCat("malformed final check ", check.dump());
  }
  const std::string key = check.begin().key();
  const json& arg = check.begin().value();
  try {
    if (key == "ended") {
      if (state.ended != arg.get<bool>()) return absl::StrCat("ended is ", state.ended);
    } else if (key == "survey") {
      if (state.exit_survey.has_value() != arg.get<bool>()) {
        return absl::StrCat("survey present is ", state.exit_survey.has_value());
      }
    } else if (key == "interactions_used") {
      if (state.interactions_used != arg.get<int>()) {
        return absl::StrCat("interactions_used is ", state.interactions_used);
      }
    } else if (key == "goals") {
      std::vector<int> goals;
      for (const auto& r : state.goal_reports) goals.push_back(r.goal_index);
      if (goals != arg.get<std::vector<int>>()) {
        return absl::StrCat("goal reports are ", json(goals).dump());
      }
    } else if (key == "frozen") {
      std::vector<int> frozen;
      for (const auto& l : state.story.lines) {
        if (l.frozen) frozen.push_back(l.index);
      }
      if (frozen != arg.get<std::vector<int>>()) {
        return absl::StrCat("frozen lines are ", json(frozen).dump());
      }
    } else if (key == "budgeted_activations") {
      const auto n = std::count_if(log.begin(), log.end(), [](const SessionEvent& e) {
        return e.kind == EventKind::kCommActivated &&
               e.payload.value("counts_against_budget", false);
      });
      if (n != arg.get<int>()) return absl::StrCat("budgeted activations: ", n);
    } else if (key == "line_topic") {
      for (int i = arg.at("from").get<int>(); i <= arg.at("to").get<int>(); ++i) {
        if (!state.story.InBounds(i)) return absl::StrCat("no line ", i);
        const auto& topic = state.story.lines[i].dominant_topic;
        if (topic != arg.at("topic").get<std::string>()) {
          return absl::StrCat("line ", i, " topic is ", topic.value_or("(none)"));
        }
      }
    } else if (key == "line_text") {
      const int i = arg.at("line").get<int>();
      if (!state.story.InBounds(i)) return absl::StrCat("no line ", i);
      if (state.story.lines[i].text != arg.at("text").get<std::string>()) {
        return absl::StrCat("line ", i, " is \"", state.story.lines[i].text, "\"");
      }
    } else {
      return absl::StrCat("unknown final check '", key, "'");
    }
  } catch (const json::exception& ex) {
    return absl::StrCat("malformed final check ", check.dump(), ": ", ex.what());
  }
  return "";
}

std::string Scrub(std::string text, const std::string& session_id) {
  if (session_id.empty()) return text;
  return absl::StrReplaceAll(text, {{session_id, "<session>"}});
}

}  // namespace

absl::StatusOr<Scenario> ScenarioFromJson(const json& j) {
  if (!j.is_object()) return absl::InvalidArgumentError("scenario must be an object");
  Scenario s;
  try {
    s.name = j.at("name").get<std::string>();
    s.description = j.value("description", std::string());
    s.script.participant_id = j.value("participant_id", absl::StrCat("p-", s.name));
    if (j.contains("condition") && !j["condition"].is_null()) {
      s.script.condition = j["condition"].get<Condition>();
    }
    if (j.contains("expect_on_create")) {
      s.script.expect_on_create = j["expect_on_create"].get<std::vector<json>>();
    }
    for (const auto& step : j.value("steps", json::array())) {
      auto parsed = ScriptStepFromJson(step);
      if (!parsed.ok()) return parsed.status();
      s.script.steps.push_back(*std::move(parsed));
    }
    if (j.contains("expect_log")) {
      const json& e = j["expect_log"];
      if (e.contains("event_counts")) {
        s.event_counts = e["event_counts"].get<std::map<std::string, int>>();
        for (const auto& [kind, n] : s.event_counts) {
          if (!ParseEventKind(kind)) {
            return absl::InvalidArgumentError(
                absl::StrCat("unknown event kind '", kind, "'"));
          }
        }
      }
      if (e.contains("final")) s.final_checks = e["final"].get<std::vector<json>>();
    }
  } catch (const std::exception& ex) {
    return absl::InvalidArgumentError(absl::StrCat("bad scenario: ", ex.what()));
  }
  if (s.name.empty()) return absl::InvalidArgumentError("scenario needs a name");
  return s;
}

absl::StatusOr<Scenario> LoadScenarioFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path.string()));
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path.string(), " is not valid JSON"));
  }
  auto s = ScenarioFromJson(j);
  if (!s.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path.string(), ": ", s.status().message()));
  }
  return s;
}

absl::StatusOr<std::vector<Scenario>> LoadScenarioDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::vector<Scenario> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    auto s = LoadScenarioFile(entry.path());
    if (!s.ok()) return s.status();
    out.push_back(*std::move(s));
  }
  if (ec) {
    return absl::NotFoundError(absl::StrCat("cannot read ", dir.string(), ": ",
                                            ec.message()));
  }
  std::sort(out.begin(), out.end(),
            [](const Scenario& a, const Scenario& b) { return a.name < b.name; });
  return out;
}

absl::StatusOr<ScenarioReport> RunScenario(const Scenario& scenario,
                                           ClientTransport& transport) {
  ScenarioReport report;
  report.name = scenario.name;
  auto script = RunScript(transport, scenario.script);
  if (!script.ok()) return script.status();
  report.script = *std::move(script);
  if (!report.script.passed()) {
    report.failures.push_back(
        absl::StrCat("step ", *report.script.failed_step, ": ", report.script.failure));
  }
  if (report.script.session_id.empty()) return report;

  auto log = transport.FetchLog(report.script.session_id);
  if (!log.ok()) return log.status();
  report.log = *std::move(log);

  std::map<std::string, int> counts;
  for (const auto& e : report.log) ++counts[std::string(ToString(e.kind))];
  for (const auto& [kind, n] : scenario.event_counts) {
    const int got = counts.contains(kind) ? counts[kind] : 0;
    if (got != n) {
      report.failures.push_back(absl::StrCat("expected ", n, " ", kind,
                                             " events, log has ", got));
    }
  }

  auto replayed = Replay(report.log);
  if (!replayed.ok()) {
    report.failures.push_back(absl::StrCat("log does not replay: ",
                                           replayed.status().message()));
    return report;
  }
  auto live = transport.FetchState(report.script.session_id);
  if (!live.ok()) return live.status();
  if (json(*replayed) != *live) {
    report.failures.push_back("replayed log differs from the live session state");
  }
  for (const auto& check : scenario.final_checks) {
    std::string failure = CheckFinal(check, *replayed, report.log);
    if (!failure.empty()) {
      report.failures.push_back(absl::StrCat("final ", check.dump(), ": ", failure));
    }
  }

  std::vector<SessionLogInput> inputs;
  inputs.push_back({report.script.session_id, report.log});
  report.metrics = BuildReport(FilterSessions(inputs), ReportOptions{});
  for (const auto& w : report.metrics["warnings"]) {
    report.failures.push_back(absl::StrCat("metrics warning: ", w.dump()));
  }
  return report;
}

absl::StatusOr<ScenarioReport> RunScenarioInProcess(const Scenario& scenario,
                                                    const ServiceConfig& config,
                                                    bool check_determinism) {
  auto run_once = [&]() -> absl::StatusOr<ScenarioReport> {
    SessionService::Options options;
    options.config = config;
    auto service = SessionService::Create(std::move(options));
    if (!service.ok()) return service.status();
    InProcessTransport transport(**service);
    return RunScenario(scenario, transport);
  };
  auto first = run_once();
  if (!first.ok() || !check_determinism) return first;
  auto second = run_once();
  if (!second.ok()) return second.status();
  if (NormalizeLog(first->log) != NormalizeLog(second->log)) {
    first->failures.push_back("two runs with the same seed produced different logs");
  }
  return first;
}

json NormalizeLog(const std::vector<SessionEvent>& events) {
  json out = json::array();
  for (const auto& e : events) {
    json j = EventToJson(e);
    j["ts"] = "";
    j["session_id"] = "";
    out.push_back(std::move(j));
  }
  return out;
}

std::string AnnotatedTranscript(const Scenario& scenario, const ScenarioReport& report) {
  const std::string& sid = report.script.session_id;
  std::string out = absl::StrCat("# Scenario: ", scenario.name, "\n\n");
  if (!scenario.description.empty()) absl::StrAppend(&out, scenario.description, "\n\n");
  absl::StrAppend(&out, "Result: ", report.passed() ? "PASS" : "FAIL", "\n\n");
  for (const auto& f : report.failures) absl::StrAppend(&out, "- ", f, "\n");
  if (!report.failures.empty()) out += "\n";

  const auto& transcript = report.script.transcript;
  for (size_t i = 0; i < transcript.size(); ++i) {
    const auto& entry = transcript[i];
    absl::StrAppend(&out, "## ", i, ". ", entry.note.empty() ? "(step)" : entry.note,
                    "\n\nClient sends:\n\n```json\n", Scrub(entry.sent.dump(), sid),
                    "\n```\n\nServer replies:\n\n");
    for (const auto& m : entry.received) {
      absl::StrAppend(&out, "- `", m.value("type", "?"), "` ",
                      Scrub(m.dump(), sid), "\n");
    }
    out += "\n";
  }
  out += "## Log event kinds\n\n";
  std::map<std::string, int> counts;
  for (const auto& e : report.log) ++counts[std::string(ToString(e.kind))];
  for (const auto& [kind, n] : counts) absl::StrAppend(&out, "- ", kind, ": ", n, "\n");
  return out;
}

}  // namespace cocreate
