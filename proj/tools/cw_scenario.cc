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

// Runs bundled scenarios end to end over HTTP, either against an embedded
// server (mock generator, fixed seed, fresh log directory per run) or
// against a running service given by --url.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "scenarios/scenario.h"
#include "service/server.h"

#ifndef COCREATE_SCENARIO_DIR
#define COCREATE_SCENARIO_DIR "scenarios"
#endif

namespace {

using cocreate::Scenario;
using cocreate::ScenarioReport;

absl::StatusOr<std::filesystem::path> MakeTempDir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "cw-scenario-XXXXXX").string();
  if (mkdtemp(tmpl.data()) == nullptr) return absl::InternalError("mkdtemp failed");
  return std::filesystem::path(tmpl);
}

absl::StatusOr<ScenarioReport> RunEmbedded(const Scenario& scenario,
                                           const cocreate::ServiceConfig& config) {
  cocreate::SessionService::Options options;
  options.config = config;
  auto service = cocreate::SessionService::Create(std::move(options));
  if (!service.ok()) return service.status();
  cocreate::Server server(**service);
  if (auto s = server.Start("127.0.0.1:0"); !s.ok()) return s;
  cocreate::HttpTransport transport(absl::StrCat("http://127.0.0.1:", server.port()));
  auto report = cocreate::RunScenario(scenario, transport);
  server.Stop();
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scenario runner"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run a scenario by name, or all of them");
  std::string which;
  std::string dir = COCREATE_SCENARIO_DIR;
  std::string url;
  std::string log_dir;
  std::string transcripts;
  uint64_t seed = 42;
  bool skip_determinism = false;
  run->add_option("name", which, "Scenario name or 'all'")->required();
  run->add_option("--scenarios", dir, "Directory of scenario files");
  run->add_option("--url", url, "Use a running service instead of an embedded one");
  run->add_option("--seed", seed, "Condition-assignment seed for the embedded service");
  run->add_option("--log-dir", log_dir, "Where the embedded service writes logs");
  run->add_option("--transcripts", transcripts,
                  "Write an annotated Markdown transcript per scenario here");
  run->add_flag("--skip-determinism", skip_determinism,
                "Run each scenario once instead of twice");
  CLI11_PARSE(app, argc, argv);

  auto all = cocreate::LoadScenarioDir(dir);
  if (!all.ok()) {
    std::cerr << all.status() << "\n";
    return 2;
  }
  std::vector<Scenario> selected;
  for (auto& s : *all) {
    if (which == "all" || s.name == which) selected.push_back(std::move(s));
  }
  if (selected.empty()) {
    std::cerr << "no scenario named '" << which << "' in " << dir << "\n";
    return 2;
  }

  cocreate::ServiceConfig config;
  config.condition_assignment.seed = seed;
  if (log_dir.empty()) {
    auto tmp = MakeTempDir();
    if (!tmp.ok()) {
      std::cerr << tmp.status() << "\n";
      return 1;
    }
    config.log_dir = *tmp;
  } else {
    config.log_dir = log_dir;
  }

  int failed = 0;
  for (const auto& scenario : selected) {
    absl::StatusOr<ScenarioReport> report;
    if (!url.empty()) {
      cocreate::HttpTransport transport(url);
      report = cocreate::RunScenario(scenario, transport);
    } else {
      report = RunEmbedded(scenario, config);
      if (report.ok() && !skip_determinism) {
        auto again = RunEmbedded(scenario, config);
        if (!again.ok()) {
          report = again.status();
        } else if (cocreate::NormalizeLog(report->log) !=
                   cocreate::NormalizeLog(again->log)) {
          report->failures.push_back("two runs with the same seed produced different logs");
        }
      }
    }
    if (!report.ok()) {
      std::cout << "FAIL " << scenario.name << ": " << report.status() << "\n";
      ++failed;
      continue;
    }
    std::cout << (report->passed() ? "PASS " : "FAIL ") << scenario.name << "\n";
    for (const auto& f : report->failures) std::cout << "  " << f << "\n";
    if (!report->passed()) ++failed;
    if (!transcripts.empty()) {
      std::filesystem::create_directories(transcripts);
      std::ofstream out(std::filesystem::path(transcripts) /
                        (scenario.name + ".transcript.md"));
      out << cocreate::AnnotatedTranscript(scenario, *report);
    }
  }
  std::cout << (selected.size() - failed) << "/" << selected.size() << " scenarios passed\n";
  return failed == 0 ? 0 : 1;
}
