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

#ifndef COCREATE_CORE_REPLAY_H_
#define COCREATE_CORE_REPLAY_H_

#include <span>

#include "absl/status/statusor.h"
#include "core/events.h"
#include "core/types.h"

namespace cocreate {

// The single state-transition function. The live session applies every event
// it persists through this, so a log replays to exactly the live state.
// `state` is left untouched when an error is returned.
absl::Status ApplyEvent(SessionState& state, const SessionEvent& event);

// Folds a whole session log. The log must start with session_created and
// carry contiguous `seq` values for a single session id.
absl::StatusOr<SessionState> Replay(std::span<const SessionEvent> events);

}  // namespace cocreate

#endif  // COCREATE_CORE_REPLAY_H_
