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

// Built-in communications for the global/local story experiment.
//
//   comm_id               condition  initiator mode         scope   budgeted
//   user_sketch           global     human     elaboration  global  yes
//   user_work             local      human     elaboration  local   yes
//   generate_with_freeze  local      human     elaboration  local   yes
//                                    (+ agent-initiated freeze suggestion)
//   regenerate            both       human     elaboration  global  yes
//   goal_complete         both       human     reflection   global  no
//   feeling               both       human     reflection   global  no
//   end_session           both       human     reflection   global  no

#ifndef COCREATE_COMMS_BUILTIN_H_
#define COCREATE_COMMS_BUILTIN_H_

#include <memory>

#include "comms/communication.h"
#include "core/types.h"

namespace cocreate {

inline constexpr char kUserSketchComm[] = "user_sketch";
inline constexpr char kUserWorkComm[] = "user_work";
inline constexpr char kGenerateWithFreezeComm[] = "generate_with_freeze";
inline constexpr char kRegenerateComm[] = "regenerate";
inline constexpr char kGoalCompleteComm[] = "goal_complete";
inline constexpr char kFeelingComm[] = "feeling";
inline constexpr char kEndSessionComm[] = "end_session";

std::shared_ptr<const Communication> MakeUserSketchComm();
std::shared_ptr<const Communication> MakeUserWorkComm();
std::shared_ptr<const Communication> MakeGenerateWithFreezeComm();
std::shared_ptr<const Communication> MakeRegenerateComm();
std::shared_ptr<const Communication> MakeGoalCompleteComm();
std::shared_ptr<const Communication> MakeFeelingComm();
std::shared_ptr<const Communication> MakeEndSessionComm();

// Condition-specific communications first, then the shared ones.
CommunicationRegistry BuiltinRegistry(Condition condition);

// 1.0 right after a hand edit of a still-unfrozen line (local condition
// only) until the freeze suggestion for that edit has been offered.
double FreezeSuggestionConfidence(const SessionState& session);

// Maps free text to a feeling: "frustrated", "satisfied", "neutral" (or the
// menu numbers 1-3); anything else is kept verbatim as kOther.
Feeling ParseFeeling(std::string_view text);

}  // namespace cocreate

#endif  // COCREATE_COMMS_BUILTIN_H_
