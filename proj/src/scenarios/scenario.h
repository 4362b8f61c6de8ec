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

#ifndef COCREATE_SCENARIOS_SCENARIO_H_
#define COCREATE_SCENARIOS_SCENARIO_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "service/config.h"
#include "service/scripted_client.h"

namespace cocreate {

// A scripted session plus the properties its log must have.
//
// File format (scenarios/<name>.json):
//   {"name", "description", "condition": "global"|"local", "participant_id",
//    "expect_on_create": [predicate],
//    "steps": [{"note", "send": client message, "expect": [predicate]}],
//    "expect_log": {"event_counts": {kind: n},
//                   "final": [{"ended": b} | {"survey": b} |
//                             {"interactions_used": n} | {"goals": [g]} |
//                             {"frozen": [i]} | {"budgeted_activations": n} |
//                             {"line_topic": {"from", "to", "topic"}} |
//                             {"line_text": {"line", "text"}}]}}
struct Scenario {
  std::string name;
  std::string description;
  ClientScript script;
  std::map<std::string, int> event_counts;
  std::vector<nlohmann::json> final_checks;
};

absl::StatusOr<Scenario> ScenarioFromJson(const nlohmann::json& j);
absl::StatusOr<Scenario> LoadScenarioFile(const std::filesystem::path& path);
// Every *.json file in `dir`, sorted by scenario name.
absl::StatusOr<std::vector<Scenario>> LoadScenarioDir(const std::filesystem::path& dir);

struct ScenarioReport {
  std::string name;
  std::vector<std::string> failures;
  ScriptResult script;
  std::vector<SessionEvent> log;
  nlohmann::json metrics;

  bool passed() const { return failures.empty(); }
};

// Runs the script, then checks event counts, final state, that replaying
// the log gives the live state, and that the metrics pipeline reads the log
// without warnings.
absl::StatusOr<ScenarioReport> RunScenario(const Scenario& scenario,
                                           ClientTransport& transport);

// Runs the scenario against a fresh in-process service writing to
// `log_dir`. With `check_determinism` it runs a second time on another
// fresh service and compares the two logs.
absl::StatusOr<ScenarioReport> RunScenarioInProcess(const Scenario& scenario,
                                                    const ServiceConfig& config,
                                                    bool check_determinism);

// Log with ts and session_id blanked, for run-to-run comparison.
nlohmann::json NormalizeLog(const std::vector<SessionEvent>& events);

// Markdown walk-through of a run: each message sent and what came back.
std::string AnnotatedTranscript(const Scenario& scenario, const ScenarioReport& report);

}  // namespace cocreate

#endif  // COCREATE_SCENARIOS_SCENARIO_H_
