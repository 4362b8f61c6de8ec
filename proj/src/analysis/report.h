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

#ifndef COCREATE_ANALYSIS_REPORT_H_
#define COCREATE_ANALYSIS_REPORT_H_

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "absl/status/statusor.h"
#include "analysis/metrics.h"
#include "json.hpp"

namespace cocreate {

enum class ReportKind { kCompletion, kInteractions, kFrustration, kSurvey, kAll };

std::optional<ReportKind> ParseReportKind(std::string_view s);

struct ReportOptions {
  ReportKind report = ReportKind::kAll;
  bool pooled = false;
  BestRule best_rule = BestRule::kPerMetric;
};

// Pre-aggregated counts:
//   {"1": {"local": {"k": 7, "n": 28}, "global": {"k": 13, "n": 32}}, ...,
//    "frustration": {"local": {...}, "global": {...}}}
struct SummaryInput {
  std::map<int, std::pair<Proportion, Proportion>> completion;  // local, global
  std::optional<std::pair<Proportion, Proportion>> frustration;
};

absl::StatusOr<SummaryInput> ParseSummaryJson(const nlohmann::json& j);

// Report schema (sections appear when requested):
//   {"source": "logs"|"summary", "best_rule", "pooled",
//    "participants": {"local", "global"}, "sessions": {"read", "dropped"},
//    "warnings": [{"source", "message"}],
//    "completion": {"available", "reason"?, "rows": [{"goal",
//        "local": {"k","n","rate"}, "global": {...}, "z", "p"}]},
//    "interactions": {"available", "rows": [{"goal", "local": {"n","mean"},
//        "global": {...}, "t"?, "df"?, "p"?, "omitted_reason"?}]},
//    "frustration": {"available", "reason"?, "local", "global", "z", "p"},
//    "survey": {"available", "rows": [{"label", "condition", "key",
//        "counts": {likert: n}}]}}
// Non-finite statistics are written as strings ("inf", "-inf").
nlohmann::json BuildReport(const FilterResult& filtered, const ReportOptions& options);

// kInvalidQuery when a section needs raw logs.
absl::StatusOr<nlohmann::json> BuildSummaryReport(const SummaryInput& summary,
                                                  const ReportOptions& options);

std::string RenderMarkdown(const nlohmann::json& report);

}  // namespace cocreate

#endif  // COCREATE_ANALYSIS_REPORT_H_
