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

#include "service/config.h"

#include <cstdlib>
#include <fstream>
#include <initializer_list>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "core/json_codec.h"
#include "core/strings.h"

namespace cocreate {
namespace {

absl::Status CheckKeys(const json& j, std::string_view where,
                       std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError(absl::StrCat(Av(where), " must be an object"));
  }
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown config key '", Av(where), ".", key, "'"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<GeneratorBackendKind> ParseBackend(std::string_view s) {
  if (s == "mock") return GeneratorBackendKind::kMock;
  if (s == "remote") return GeneratorBackendKind::kRemote;
  return absl::InvalidArgumentError(
      absl::StrCat("generator must be mock or remote, got '", Av(s), "'"));
}

// "random", "global" or "local"; a forced condition keeps the seed.
absl::Status ApplyConditionName(std::string_view s, ConditionAssignment& a) {
  if (s == "random") {
    a.mode = AssignmentMode::kRandom;
    return absl::OkStatus();
  }
  if (auto c = ParseCondition(s)) {
    a.mode = AssignmentMode::kForced;
    a.forced = *c;
    return absl::OkStatus();
  }
  return absl::InvalidArgumentError(
      absl::StrCat("condition must be random, global or local, got '", Av(s), "'"));
}

}  // namespace

absl::Status ServiceConfig::Validate() const {
  if (listen_address.empty()) return absl::InvalidArgumentError("empty listen address");
  if (log_dir.empty()) return absl::InvalidArgumentError("empty log_dir");
  if (num_lines <= 0) return absl::InvalidArgumentError("num_lines must be positive");
  if (auto s = generator.Validate(); !s.ok()) return s;
  return manager.Validate();
}

std::optional<std::string> ProcessEnv(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

absl::Status ApplyConfigJson(const json& j, ServiceConfig& config) {
  if (auto s = CheckKeys(j, "config",
                         {"listen", "log_dir", "num_lines", "generator", "manager",
                          "condition", "seed"});
      !s.ok()) {
    return s;
  }
  try {
    if (j.contains("listen")) config.listen_address = j["listen"].get<std::string>();
    if (j.contains("log_dir")) config.log_dir = j["log_dir"].get<std::string>();
    if (j.contains("num_lines")) config.num_lines = j["num_lines"].get<int>();
    if (j.contains("generator")) {
      const json& g = j["generator"];
      if (auto s = CheckKeys(g, "generator",
                             {"backend", "remote_url", "sigma",
                              "vocabulary_seed_salt", "request_timeout_ms"});
          !s.ok()) {
        return s;
      }
      if (g.contains("backend")) {
        auto kind = ParseBackend(g["backend"].get<std::string>());
        if (!kind.ok()) return kind.status();
        config.generator.backend = *kind;
      }
      if (g.contains("remote_url")) {
        config.generator.remote_url = g["remote_url"].get<std::string>();
      }
      if (g.contains("sigma")) config.generator.sigma = g["sigma"].get<double>();
      if (g.contains("vocabulary_seed_salt")) {
        config.generator.vocabulary_seed_salt = g["vocabulary_seed_salt"].get<uint64_t>();
      }
      if (g.contains("request_timeout_ms")) {
        config.generator.request_timeout =
            std::chrono::milliseconds(g["request_timeout_ms"].get<int64_t>());
      }
    }
    if (j.contains("manager")) {
      const json& m = j["manager"];
      if (auto s = CheckKeys(m, "manager", {"interrupt_threshold", "interaction_budget"});
          !s.ok()) {
        return s;
      }
      if (m.contains("interrupt_threshold")) {
        config.manager.interrupt_threshold = m["interrupt_threshold"].get<double>();
      }
      if (m.contains("interaction_budget")) {
        config.manager.interaction_budget = m["interaction_budget"].get<int>();
      }
    }
    if (j.contains("condition")) {
      if (auto s = ApplyConditionName(j["condition"].get<std::string>(),
                                      config.condition_assignment);
          !s.ok()) {
        return s;
      }
    }
    if (j.contains("seed")) config.condition_assignment.seed = j["seed"].get<uint64_t>();
  } catch (const json::exception& ex) {
    return absl::InvalidArgumentError(absl::StrCat("bad config value: ", ex.what()));
  }
  return absl::OkStatus();
}

absl::Status ApplyEnvOverrides(const EnvLookup& env, ServiceConfig& config) {
  if (auto v = env("CW_LISTEN")) config.listen_address = *v;
  if (auto v = env("CW_LOG_DIR")) config.log_dir = *v;
  if (auto v = env("CW_GENERATOR")) {
    auto kind = ParseBackend(*v);
    if (!kind.ok()) return kind.status();
    config.generator.backend = *kind;
  }
  if (auto v = env("CW_REMOTE_URL")) config.generator.remote_url = *v;
  if (auto v = env("CW_BUDGET")) {
    if (!absl::SimpleAtoi(*v, &config.manager.interaction_budget)) {
      return absl::InvalidArgumentError(absl::StrCat("CW_BUDGET is not an integer: ", *v));
    }
  }
  if (auto v = env("CW_INTERRUPT_THRESHOLD")) {
    if (!absl::SimpleAtod(*v, &config.manager.interrupt_threshold)) {
      return absl::InvalidArgumentError(
          absl::StrCat("CW_INTERRUPT_THRESHOLD is not a number: ", *v));
    }
  }
  if (auto v = env("CW_CONDITION")) {
    if (auto s = ApplyConditionName(*v, config.condition_assignment); !s.ok()) return s;
  }
  if (auto v = env("CW_SEED")) {
    if (!absl::SimpleAtoi(*v, &config.condition_assignment.seed)) {
      return absl::InvalidArgumentError(absl::StrCat("CW_SEED is not an integer: ", *v));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<ServiceConfig> LoadServiceConfig(
    const std::optional<std::filesystem::path>& file, const EnvLookup& env) {
  ServiceConfig config;
  if (file.has_value()) {
    std::ifstream in(*file);
    if (!in) {
      return absl::NotFoundError(absl::StrCat("cannot read config ", file->string()));
    }
    json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      return absl::InvalidArgumentError(
          absl::StrCat(file->string(), " is not valid JSON"));
    }
    if (auto s = ApplyConfigJson(j, config); !s.ok()) return s;
  }
  if (auto s = ApplyEnvOverrides(env, config); !s.ok()) return s;
  if (auto s = config.Validate(); !s.ok()) return s;
  return config;
}

}  // namespace cocreate
