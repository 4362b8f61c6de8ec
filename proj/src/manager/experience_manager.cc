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

#include "manager/experience_manager.h"

#include "absl/strings/str_cat.h"
#include "core/errors.h"
#include "core/strings.h"

namespace cocreate {

absl::Status ManagerConfig::Validate() const {
  if (!(interrupt_threshold >= 0.0 && interrupt_threshold <= 1.0)) {
    return absl::InvalidArgumentError("interrupt_threshold must be in [0, 1]");
  }
  if (interaction_budget <= 0) {
    return absl::InvalidArgumentError("interaction_budget must be positive");
  }
  return absl::OkStatus();
}

ManagerDecision ActivatePreferred(const SessionState& session,
                                  const CommunicationRegistry& registry,
                                  const ManagerConfig& config) {
  if (session.ended) return decision::AnnounceSessionEnd{};
  if (session.active_dialogue.has_value()) return decision::RouteToDialogue{};
  if (session.budget_exhausted() && !session.budget_exhausted_announced) {
    return decision::AnnounceBudgetExhausted{};
  }

  const Communication* best = nullptr;
  double best_confidence = -1.0;
  for (const auto& comm : registry.all()) {
    const double c = comm->ConfidenceToInterrupt(session);
    if (c > best_confidence) {
      best = comm.get();
      best_confidence = c;
    }
  }
  if (best != nullptr && best_confidence >= config.interrupt_threshold &&
      best_confidence > 0.0) {
    return decision::StartInterrupt{best->id()};
  }

  decision::OfferMenu menu;
  for (const auto& comm : registry.all()) {
    if (comm->ConfidenceToActivate(session) > 0.0) {
      menu.items.push_back(comm->descriptor());
    }
  }
  return menu;
}

absl::StatusOr<Activation> InterruptActivate(const SessionState& session,
                                             const CommunicationRegistry& registry,
                                             std::string_view comm_id) {
  const Communication* comm = registry.Find(comm_id);
  if (comm == nullptr) {
    return MakeError(ErrorCode::kUnknownCommunication,
                     absl::StrCat("no communication named '", Av(comm_id), "'"));
  }
  return Activate(*comm, session);
}

}  // namespace cocreate
