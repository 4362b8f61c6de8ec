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

// Computes the study tables from session logs or from pre-aggregated counts.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "analysis/metrics.h"
#include "analysis/report.h"

namespace {

int Fail(std::string_view message) {
  std::cerr << "cw-analyze: " << message << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyse co-creation session logs"};
  std::string logs_dir;
  std::string summary_file;
  std::string report = "all";
  std::string format = "json";
  std::string best_rule = "per-metric";
  bool pooled = false;

  auto* logs_opt = app.add_option("--logs", logs_dir, "Directory of session .jsonl logs");
  auto* summary_opt =
      app.add_option("--summary", summary_file, "JSON file of pre-aggregated counts");
  logs_opt->excludes(summary_opt);
  app.add_option("--report", report, "Which table")
      ->check(CLI::IsMember({"completion", "interactions", "frustration", "survey", "all"}));
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "markdown"}));
  app.add_flag("--pooled", pooled, "Use the pooled standard error in z-tests");
  app.add_option("--best-rule", best_rule, "How a participant's sessions combine")
      ->check(CLI::IsMember({"per-metric", "per-session"}));
  CLI11_PARSE(app, argc, argv);

  if (logs_dir.empty() && summary_file.empty()) {
    return Fail("one of --logs or --summary is required");
  }

  cocreate::ReportOptions options;
  options.report = *cocreate::ParseReportKind(report);
  options.pooled = pooled;
  options.best_rule = *cocreate::ParseBestRule(best_rule);

  nlohmann::json result;
  if (!summary_file.empty()) {
    std::ifstream in(summary_file);
    if (!in) return Fail("cannot read " + summary_file);
    auto j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) return Fail(summary_file + " is not valid JSON");
    auto summary = cocreate::ParseSummaryJson(j);
    if (!summary.ok()) return Fail(summary.status().ToString());
    auto built = cocreate::BuildSummaryReport(*summary, options);
    if (!built.ok()) return Fail(built.status().ToString());
    result = *std::move(built);
  } else {
    auto logs = cocreate::ReadLogDir(logs_dir);
    if (!logs.ok()) return Fail(logs.status().ToString());
    result = cocreate::BuildReport(cocreate::FilterSessions(*logs), options);
    for (const auto& w : result["warnings"]) {
      std::cerr << "warning: " << w["source"].get<std::string>() << ": "
                << w["message"].get<std::string>() << "\n";
    }
  }

  if (format == "json") {
    std::cout << result.dump(2) << "\n";
  } else {
    std::cout << cocreate::RenderMarkdown(result);
  }
  return 0;
}
