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

// Turn-based, rule-driven experience manager. It holds no state of its own:
// every decision is a function of (SessionState, registry, config).

#ifndef COCREATE_MANAGER_EXPERIENCE_MANAGER_H_
#define COCREATE_MANAGER_EXPERIENCE_MANAGER_H_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "comms/communication.h"
#include "core/types.h"

namespace cocreate {

struct ManagerConfig {
  double interrupt_threshold = 0.5;
  int interaction_budget = kDefaultInteractionBudget;

  absl::Status Validate() const;
};

namespace decision {
struct OfferMenu {
  std::vector<CommunicationDescriptor> items;
};
struct StartInterrupt {
  std::string comm_id;
};
struct RouteToDialogue {};
struct AnnounceBudgetExhausted {};
struct AnnounceSessionEnd {};
}  // namespace decision

using ManagerDecision =
    std::variant<decision::OfferMenu, decision::StartInterrupt,
                 decision::RouteToDialogue, decision::AnnounceBudgetExhausted,
                 decision::AnnounceSessionEnd>;

// Decides what the agent does next, after every completed user turn:
//  - session ended                      -> AnnounceSessionEnd
//  - a dialogue is open                 -> RouteToDialogue
//  - budget just ran out, not announced -> AnnounceBudgetExhausted
//  - best interrupt confidence >= threshold -> StartInterrupt (first
//    registered wins ties)
//  - otherwise OfferMenu of every comm with positive activation confidence.
ManagerDecision ActivatePreferred(const SessionState& session,
                                  const CommunicationRegistry& registry,
                                  const ManagerConfig& config);

// Human selection from the menu. Communications outside the session's
// registry (including those gated by condition) are kUnknownCommunication.
absl::StatusOr<Activation> InterruptActivate(const SessionState& session,
                                             const CommunicationRegistry& registry,
                                             std::string_view comm_id);

}  // namespace cocreate

#endif  // COCREATE_MANAGER_EXPERIENCE_MANAGER_H_
