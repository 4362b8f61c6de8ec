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

#ifndef COCREATE_CORE_ERRORS_H_
#define COCREATE_CORE_ERRORS_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"

namespace cocreate {

// Domain error kinds. Each maps onto a canonical absl code and is carried as
// a status payload so callers can branch on the precise kind.
enum class ErrorCode {
  kMalformedLog,
  kUnsupportedEvent,
  kInvalidQuery,
  kGeneratorUnavailable,
  kProtocolViolation,
  kNoControlSignal,
  kBusy,
  kBudgetExhausted,
  kUnknownCommunication,
  kUnknownSession,
  kEmptyCondition,
  kScriptTimeout,
  kStorage,
  kEnded,
  kNotEnded,
  kInvalidMessage,
  kInvalidSurvey,
  kSurveyExists,
  kInternal,
};

// Wire name, e.g. "budget_exhausted". Also used as the `error.code` field.
std::string_view ErrorCodeName(ErrorCode code);

absl::Status MakeError(ErrorCode code, std::string_view message);

// Returns the domain kind of a status produced by MakeError, if any.
std::optional<ErrorCode> GetErrorCode(const absl::Status& status);

inline bool HasErrorCode(const absl::Status& status, ErrorCode code) {
  return GetErrorCode(status) == code;
}

}  // namespace cocreate

#endif  // COCREATE_CORE_ERRORS_H_
