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

#include "analysis/report.h"

#include <cmath>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "core/enum_names.h"
#include "core/errors.h"
#include "core/json_codec.h"
#include "core/strings.h"

namespace cocreate {

template <>
struct EnumNames<ReportKind> {
  static constexpr std::pair<ReportKind, std::string_view> kTable[] = {
      {ReportKind::kCompletion, "completion"},
      {ReportKind::kInteractions, "interactions"},
      {ReportKind::kFrustration, "frustration"},
      {ReportKind::kSurvey, "survey"},
      {ReportKind::kAll, "all"},
  };
};

std::optional<ReportKind> ParseReportKind(std::string_view s) {
  return EnumFromString<ReportKind>(s);
}

namespace {

json Number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json ProportionJson(const Proportion& p) {
  return json{{"k", p.k}, {"n", p.n}, {"rate", p.rate()}};
}

bool Wants(const ReportOptions& o, ReportKind k) {
  return o.report == ReportKind::kAll || o.report == k;
}

json Unavailable(const absl::Status& status) {
  return json{{"available", false}, {"reason", Message(status)}};
}

json CompletionJson(const absl::StatusOr<std::vector<CompletionRow>>& rows) {
  if (!rows.ok()) return Unavailable(rows.status());
  json out{{"available", true}, {"rows", json::array()}};
  for (const auto& r : *rows) {
    out["rows"].push_back(json{{"goal", r.goal},
                               {"local", ProportionJson(r.local)},
                               {"global", ProportionJson(r.global)},
                               {"z", Number(r.test.z)},
                               {"p", Number(r.test.p)}});
  }
  return out;
}

json FrustrationJson(const absl::StatusOr<FrustrationResult>& r) {
  if (!r.ok()) return Unavailable(r.status());
  return json{{"available", true},
              {"local", ProportionJson(r->local)},
              {"global", ProportionJson(r->global)},
              {"z", Number(r->test.z)},
              {"p", Number(r->test.p)}};
}

absl::StatusOr<Proportion> ParseProportion(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("k") || !j.contains("n") ||
      !j["k"].is_number_integer() || !j["n"].is_number_integer()) {
    return MakeError(ErrorCode::kInvalidQuery,
                     absl::StrCat(where, " needs integer k and n"));
  }
  Proportion p{j["k"].get<int>(), j["n"].get<int>()};
  if (p.n < 1 || p.k < 0 || p.k > p.n) {
    return MakeError(ErrorCode::kInvalidQuery,
                     absl::StrCat(where, " needs 0 <= k <= n and n >= 1"));
  }
  return p;
}

absl::StatusOr<std::pair<Proportion, Proportion>> ParsePair(const json& j,
                                                            const std::string& where) {
  if (!j.is_object()) {
    return MakeError(ErrorCode::kInvalidQuery, absl::StrCat(where, " must be an object"));
  }
  auto local = ParseProportion(j.value("local", json()), where + ".local");
  if (!local.ok()) return local.status();
  auto global = ParseProportion(j.value("global", json()), where + ".global");
  if (!global.ok()) return global.status();
  return std::make_pair(*local, *global);
}

std::string Percent(const json& p) {
  // Half-up at one decimal, so 10/32 reads 31.3%.
  const double tenths = std::floor(p["rate"].get<double>() * 1000.0 + 0.5 + 1e-9);
  return absl::StrFormat("%.1f%% (%d/%d)", tenths / 10.0,
                         p["k"].get<int>(), p["n"].get<int>());
}

std::string PValue(const json& p) {
  if (p.is_number()) return absl::StrFormat("%.3f", p.get<double>());
  return p.is_string() ? p.get<std::string>() : std::string("n/a");
}

}  // namespace

absl::StatusOr<SummaryInput> ParseSummaryJson(const json& j) {
  if (!j.is_object()) {
    return MakeError(ErrorCode::kInvalidQuery, "summary must be a JSON object");
  }
  SummaryInput in;
  for (const auto& [key, value] : j.items()) {
    if (key == "frustration") {
      auto pair = ParsePair(value, key);
      if (!pair.ok()) return pair.status();
      in.frustration = *pair;
      continue;
    }
    int goal = 0;
    if (!absl::SimpleAtoi(key, &goal) || goal < 1 || goal > kNumGoals) {
      return MakeError(ErrorCode::kInvalidQuery,
                       absl::StrCat("unknown summary key '", key, "'"));
    }
    auto pair = ParsePair(value, absl::StrCat("goal ", goal));
    if (!pair.ok()) return pair.status();
    in.completion[goal] = *pair;
  }
  return in;
}

json BuildReport(const FilterResult& filtered, const ReportOptions& options) {
  const auto outcomes = BestOutcomes(filtered.records, options.best_rule);
  json report{{"source", "logs"},
              {"best_rule", ToString(options.best_rule)},
              {"pooled", options.pooled}};
  int local = 0;
  int global = 0;
  for (const auto& o : outcomes) ++(o.condition == Condition::kLocal ? local : global);
  report["participants"] = json{{"local", local}, {"global", global}};
  report["sessions"] = json{{"read", filtered.sessions_read},
                            {"dropped", filtered.sessions_dropped}};
  report["warnings"] = json::array();
  for (const auto& w : filtered.warnings) {
    report["warnings"].push_back(json{{"source", w.source}, {"message", w.message}});
  }

  if (Wants(options, ReportKind::kCompletion)) {
    report["completion"] =
        CompletionJson(CompletionTable(CompletionCounts(outcomes), options.pooled));
  }
  if (Wants(options, ReportKind::kInteractions)) {
    json section{{"available", true}, {"rows", json::array()}};
    for (const auto& r : InteractionsTable(outcomes)) {
      auto cell = [](const std::vector<double>& v, const std::optional<double>& mean) {
        return json{{"n", v.size()}, {"mean", mean ? json(*mean) : json(nullptr)}};
      };
      json row{{"goal", r.goal},
               {"local", cell(r.local, r.mean_local)},
               {"global", cell(r.global, r.mean_global)}};
      if (r.test) {
        row["t"] = Number(r.test->t);
        row["df"] = Number(r.test->df);
        row["p"] = Number(r.test->p);
      } else {
        row["p"] = nullptr;
        row["omitted_reason"] = r.omitted_reason;
      }
      section["rows"].push_back(std::move(row));
    }
    report["interactions"] = std::move(section);
  }
  if (Wants(options, ReportKind::kFrustration)) {
    const auto [l, g] = FrustrationCounts(outcomes);
    report["frustration"] = FrustrationJson(FrustrationTest(l, g, options.pooled));
  }
  if (Wants(options, ReportKind::kSurvey)) {
    json section{{"available", true}, {"rows", json::array()}};
    for (const auto& [condition, keys] : SurveySummary(outcomes)) {
      for (const auto& [key, levels] : keys) {
        json counts = json::object();
        for (const auto& [level, n] : levels) counts[std::string(ToString(level))] = n;
        section["rows"].push_back(json{{"label", SurveyLabel(condition, key)},
                                       {"condition", condition},
                                       {"key", ToString(key)},
                                       {"counts", std::move(counts)}});
      }
    }
    report["survey"] = std::move(section);
  }
  return report;
}

absl::StatusOr<json> BuildSummaryReport(const SummaryInput& summary,
                                        const ReportOptions& options) {
  if (options.report == ReportKind::kInteractions ||
      options.report == ReportKind::kSurvey) {
    return MakeError(ErrorCode::kInvalidQuery,
                     "interactions and survey reports need session logs");
  }
  json report{{"source", "summary"},
              {"best_rule", nullptr},
              {"pooled", options.pooled},
              {"warnings", json::array()}};
  if (Wants(options, ReportKind::kCompletion)) {
    if (summary.completion.empty()) {
      if (options.report == ReportKind::kCompletion) {
        return MakeError(ErrorCode::kInvalidQuery, "summary has no goal counts");
      }
    } else {
      report["completion"] =
          CompletionJson(CompletionTable(summary.completion, options.pooled));
    }
  }
  if (Wants(options, ReportKind::kFrustration)) {
    if (!summary.frustration) {
      if (options.report == ReportKind::kFrustration) {
        return MakeError(ErrorCode::kInvalidQuery, "summary has no frustration counts");
      }
    } else {
      report["frustration"] = FrustrationJson(FrustrationTest(
          summary.frustration->first, summary.frustration->second, options.pooled));
    }
  }
  return report;
}

std::string RenderMarkdown(const json& report) {
  std::string out;
  if (report.contains("participants")) {
    absl::StrAppend(&out, "Participants: local ", report["participants"]["local"].dump(),
                    ", global ", report["participants"]["global"].dump(), "\n");
  }
  if (report.contains("sessions")) {
    absl::StrAppend(&out, "Sessions read: ", report["sessions"]["read"].dump(),
                    ", dropped (< ", kMinQualifyingInteractions, " interactions): ",
                    report["sessions"]["dropped"].dump(), "\n");
  }
  if (!out.empty()) out += "\n";

  auto unavailable = [&](const json& section) {
    if (section.value("available", false)) return false;
    absl::StrAppend(&out, "Not available: ", section.value("reason", std::string()), "\n\n");
    return true;
  };

  if (report.contains("completion")) {
    const json& s = report["completion"];
    out += "## Sub-goal completion\n\n";
    if (!unavailable(s)) {
      out += "| Goal | Local | Global | p (H0: p_global <= p_local) |\n";
      out += "|---|---|---|---|\n";
      for (const auto& r : s["rows"]) {
        absl::StrAppend(&out, "| ", r["goal"].dump(), " | ", Percent(r["local"]), " | ",
                        Percent(r["global"]), " | ", PValue(r["p"]), " |\n");
      }
      out += "\n";
    }
  }
  if (report.contains("interactions")) {
    const json& s = report["interactions"];
    out += "## Interactions at report\n\n";
    out += "| Goal | Local | Global | p (H0: t_global >= t_local) |\n";
    out += "|---|---|---|---|\n";
    auto mean = [](const json& cell) {
      if (!cell["mean"].is_number()) return std::string("-");
      return absl::StrFormat("%.2f (n=%d)", cell["mean"].get<double>(),
                             cell["n"].get<int>());
    };
    for (const auto& r : s["rows"]) {
      const std::string p = r["p"].is_null()
                                ? absl::StrCat("n/a: ", r.value("omitted_reason", ""))
                                : PValue(r["p"]);
      absl::StrAppend(&out, "| ", r["goal"].dump(), " | ", mean(r["local"]), " | ",
                      mean(r["global"]), " | ", p, " |\n");
    }
    out += "\n";
  }
  if (report.contains("frustration")) {
    const json& s = report["frustration"];
    out += "## Frustration\n\n";
    if (!unavailable(s)) {
      out += "| | Local | Global | p (two-sided) |\n|---|---|---|---|\n";
      absl::StrAppend(&out, "| Reported frustration | ", Percent(s["local"]), " | ",
                      Percent(s["global"]), " | ", PValue(s["p"]), " |\n\n");
    }
  }
  if (report.contains("survey")) {
    out += "## Exit survey\n\n| Row |";
    for (Likert l : kAllLikert) absl::StrAppend(&out, " ", Av(ToString(l)), " |");
    out += "\n|---|";
    for (size_t i = 0; i < std::size(kAllLikert); ++i) out += "---|";
    out += "\n";
    for (const auto& r : report["survey"]["rows"]) {
      absl::StrAppend(&out, "| ", r["label"].get<std::string>(), " |");
      for (Likert l : kAllLikert) {
        absl::StrAppend(&out, " ", r["counts"][std::string(ToString(l))].dump(), " |");
      }
      out += "\n";
    }
    out += "\n";
  }
  if (report.contains("warnings") && !report["warnings"].empty()) {
    out += "## Warnings\n\n";
    for (const auto& w : report["warnings"]) {
      absl::StrAppend(&out, "- ", w["source"].get<std::string>(), ": ",
                      w["message"].get<std::string>(), "\n");
    }
  }
  return out;
}

}  // namespace cocreate
