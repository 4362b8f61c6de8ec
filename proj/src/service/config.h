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

#ifndef COCREATE_SERVICE_CONFIG_H_
#define COCREATE_SERVICE_CONFIG_H_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "context/creative_context.h"
#include "core/types.h"
#include "json.hpp"
#include "manager/experience_manager.h"

namespace cocreate {

struct ServiceConfig {
  std::string listen_address = "127.0.0.1:8080";
  std::filesystem::path log_dir = "logs";
  GeneratorConfig generator;
  ManagerConfig manager;
  ConditionAssignment condition_assignment;
  int num_lines = kDefaultNumLines;

  // Checks the parts that need no I/O; log_dir is checked by the service.
  absl::Status Validate() const;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Reads the process environment.
std::optional<std::string> ProcessEnv(const std::string& name);

// Overlays a JSON config object onto `config`. Unknown keys are rejected.
absl::Status ApplyConfigJson(const nlohmann::json& j, ServiceConfig& config);

// Applies the CW_* environment overrides.
absl::Status ApplyEnvOverrides(const EnvLookup& env, ServiceConfig& config);

// Defaults, then the optional JSON file, then the environment.
absl::StatusOr<ServiceConfig> LoadServiceConfig(
    const std::optional<std::filesystem::path>& file,
    const EnvLookup& env = ProcessEnv);

}  // namespace cocreate

#endif  // COCREATE_SERVICE_CONFIG_H_
