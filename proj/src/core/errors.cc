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

#include "core/errors.h"

#include <array>
#include <string>
#include <utility>

#include "absl/strings/cord.h"
#include "core/strings.h"

namespace cocreate {
namespace {

constexpr std::string_view kPayloadUrl = "cocreate.error";

struct ErrorInfo {
  ErrorCode code;
  std::string_view name;
  absl::StatusCode canonical;
};

constexpr std::array<ErrorInfo, 19> kErrors = {{
    {ErrorCode::kMalformedLog, "malformed_log", absl::StatusCode::kDataLoss},
    {ErrorCode::kUnsupportedEvent, "unsupported_event",
     absl::StatusCode::kUnimplemented},
    {ErrorCode::kInvalidQuery, "invalid_query",
     absl::StatusCode::kInvalidArgument},
    {ErrorCode::kGeneratorUnavailable, "generator_unavailable",
     absl::StatusCode::kUnavailable},
    {ErrorCode::kProtocolViolation, "protocol_violation",
     absl::StatusCode::kInternal},
    {ErrorCode::kNoControlSignal, "no_control_signal",
     absl::StatusCode::kFailedPrecondition},
    {ErrorCode::kBusy, "busy", absl::StatusCode::kFailedPrecondition},
    {ErrorCode::kBudgetExhausted, "budget_exhausted",
     absl::StatusCode::kResourceExhausted},
    {ErrorCode::kUnknownCommunication, "unknown_communication",
     absl::StatusCode::kNotFound},
    {ErrorCode::kUnknownSession, "no_session", absl::StatusCode::kNotFound},
    {ErrorCode::kEmptyCondition, "empty_condition",
     absl::StatusCode::kFailedPrecondition},
    {ErrorCode::kScriptTimeout, "script_timeout",
     absl::StatusCode::kDeadlineExceeded},
    {ErrorCode::kStorage, "storage", absl::StatusCode::kUnavailable},
    {ErrorCode::kEnded, "ended", absl::StatusCode::kFailedPrecondition},
    {ErrorCode::kNotEnded, "not_ended", absl::StatusCode::kFailedPrecondition},
    {ErrorCode::kInvalidMessage, "invalid_message",
     absl::StatusCode::kInvalidArgument},
    {ErrorCode::kInvalidSurvey, "invalid_survey",
     absl::StatusCode::kInvalidArgument},
    {ErrorCode::kSurveyExists, "survey_exists",
     absl::StatusCode::kAlreadyExists},
    {ErrorCode::kInternal, "internal", absl::StatusCode::kInternal},
}};

const ErrorInfo& Info(ErrorCode code) {
  for (const auto& info : kErrors) {
    if (info.code == code) return info;
  }
  return kErrors.back();
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) { return Info(code).name; }

absl::Status MakeError(ErrorCode code, std::string_view message) {
  const ErrorInfo& info = Info(code);
  absl::Status status(info.canonical, Av(message));
  status.SetPayload(Av(kPayloadUrl), absl::Cord(Av(info.name)));
  return status;
}

std::optional<ErrorCode> GetErrorCode(const absl::Status& status) {
  if (status.ok()) return std::nullopt;
  auto payload = status.GetPayload(Av(kPayloadUrl));
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (const auto& info : kErrors) {
    if (info.name == name) return info.code;
  }
  return std::nullopt;
}

}  // namespace cocreate
