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


#include <random>

#include "comms/builtin.h"
#include "core/errors.h"
#include "core/replay.h"
#include "gtest/gtest.h"
#include "manager/experience_manager.h"
#include "test_util.h"

namespace cocreate {
namespace {

SessionState Fresh(Condition c) {
  SessionState s;
  s.condition = c;
  s.story = StoryDocument::Empty(10);
  return s;
}

std::vector<std::string> MenuIds(const ManagerDecision& d) {
  std::vector<std::string> ids;
  for (const auto& item : std::get<decision::OfferMenu>(d).items) ids.push_back(item.comm_id);
  return ids;
}

TEST(Manager, NoInterruptOffersMenu) {
  auto d = ActivatePreferred(Fresh(Condition::kLocal), BuiltinRegistry(Condition::kLocal), {});
  ASSERT_TRUE(std::holds_alternative<decision::OfferMenu>(d));
  EXPECT_EQ(MenuIds(d).size(), 6u);
}

TEST(Manager, EditTriggersFreezeSuggestion) {
  auto s = Fresh(Condition::kLocal);
  s.last_edited_line = 3;
  auto d = ActivatePreferred(s, BuiltinRegistry(Condition::kLocal), {});
  ASSERT_TRUE(std::holds_alternative<decision::StartInterrupt>(d));
  EXPECT_EQ(std::get<decision::StartInterrupt>(d).comm_id, "generate_with_freeze");
  s.condition = Condition::kGlobal;
  EXPECT_TRUE(std::holds_alternative<decision::OfferMenu>(
      ActivatePreferred(s, BuiltinRegistry(Condition::kGlobal), {})));
}

TEST(Manager, ThresholdGatesInterrupts) {
  auto s = Fresh(Condition::kLocal);
  s.last_edited_line = 3;
  ManagerConfig strict;
  strict.interrupt_threshold = 1.01;
  EXPECT_TRUE(std::holds_alternative<decision::OfferMenu>(
      ActivatePreferred(s, BuiltinRegistry(Condition::kLocal), strict)));
}

TEST(Manager, ExhaustedBudgetAnnouncedThenFeedbackOnly) {
  auto s = Fresh(Condition::kGlobal);
  s.interactions_used = 15;
  auto reg = BuiltinRegistry(Condition::kGlobal);
  EXPECT_TRUE(std::holds_alternative<decision::AnnounceBudgetExhausted>(
      ActivatePreferred(s, reg, {})));
  s.budget_exhausted_announced = true;
  auto d = ActivatePreferred(s, reg, {});
  EXPECT_EQ(MenuIds(d), (std::vector<std::string>{"goal_complete", "feeling", "end_session"}));
}

TEST(Manager, DialogueAndEndTakePrecedence) {
  auto s = Fresh(Condition::kLocal);
  s.last_edited_line = 3;
  s.active_dialogue = DialogueState{"user_work"};
  auto reg = BuiltinRegistry(Condition::kLocal);
  EXPECT_TRUE(std::holds_alternative<decision::RouteToDialogue>(ActivatePreferred(s, reg, {})));
  s.ended = true;
  EXPECT_TRUE(std::holds_alternative<decision::AnnounceSessionEnd>(ActivatePreferred(s, reg, {})));
}

TEST(Manager, Selection) {
  auto global = Fresh(Condition::kGlobal);
  auto a = InterruptActivate(global, BuiltinRegistry(Condition::kGlobal), "user_sketch");
  ASSERT_TRUE(a.ok());
  EXPECT_TRUE(a->dialogue.has_value());
  auto local = Fresh(Condition::kLocal);
  EXPECT_EQ(GetErrorCode(InterruptActivate(local, BuiltinRegistry(Condition::kLocal),
                                           "user_sketch")
                             .status()),
            ErrorCode::kUnknownCommunication);
  local.active_dialogue = DialogueState{"user_work"};
  EXPECT_EQ(GetErrorCode(InterruptActivate(local, BuiltinRegistry(Condition::kLocal),
                                           "regenerate")
                             .status()),
            ErrorCode::kBusy);
}

TEST(Manager, ConfigValidation) {
  ManagerConfig c;
  EXPECT_TRUE(c.Validate().ok());
  c.interaction_budget = 0;
  EXPECT_FALSE(c.Validate().ok());
  c = {};
  c.interrupt_threshold = -0.1;
  EXPECT_FALSE(c.Validate().ok());
}

class FixedComm final : public Communication {
 public:
  FixedComm(std::string id, double interrupt)
      : Communication({id, id, {Initiator::kAgent, Mode::kReflection, Scope::kGlobal}, false},
                      {{{"?", ExpectedReply::kYesNo}}, ""}),
        interrupt_(interrupt) {}
  double ConfidenceToInterrupt(const SessionState&) const override { return interrupt_; }
  absl::StatusOr<std::vector<Effect>> Complete(const std::vector<std::string>&,
                                               const SessionState&) const override {
    return std::vector<Effect>{};
  }

 private:
  double interrupt_;
};

TEST(Manager, ArgmaxTieGoesToFirstRegistered) {
  for (int order = 0; order < 2; ++order) {
    CommunicationRegistry reg;
    std::vector<std::string> ids = order ? std::vector<std::string>{"b", "a", "c"}
                                         : std::vector<std::string>{"a", "b", "c"};
    for (const auto& id : ids) ASSERT_TRUE(reg.Register(std::make_shared<FixedComm>(id, 0.7)).ok());
    auto d = ActivatePreferred(Fresh(Condition::kGlobal), reg, {});
    ASSERT_TRUE(std::holds_alternative<decision::StartInterrupt>(d));
    EXPECT_EQ(std::get<decision::StartInterrupt>(d).comm_id, ids[0]);
  }
  CommunicationRegistry reg;
  ASSERT_TRUE(reg.Register(std::make_shared<FixedComm>("low", 0.6)).ok());
  ASSERT_TRUE(reg.Register(std::make_shared<FixedComm>("high", 0.9)).ok());
  EXPECT_EQ(std::get<decision::StartInterrupt>(ActivatePreferred(Fresh(Condition::kGlobal), reg, {}))
                .comm_id,
            "high");
}

// Random event sequences from live sessions: no interrupt while a dialogue
// is open, the menu only lists activatable comms, budgeted activations stay
// within the budget and the exhaustion event appears once, at the transition.
TEST(ManagerProperty, SafetyBudgetAndMenuSoundness) {
  int exhausted_runs = 0, menus_checked = 0;
  for (uint64_t seed = 100; seed < 260; ++seed) {
    const Condition c = seed % 2 ? Condition::kLocal : Condition::kGlobal;
    const int budget = 3 + static_cast<int>(seed % 5);
    auto run = testing::RunRandomSession(seed, c, 120, budget);
    auto reg = BuiltinRegistry(c);
    ManagerConfig cfg;
    cfg.interaction_budget = budget;

    SessionState s;
    int budgeted = 0, exhausted_events = 0;
    for (const auto& e : run.log) {
      const bool was_exhausted = s.budget_exhausted();
      ASSERT_TRUE(ApplyEvent(s, e).ok());
      if (e.kind == EventKind::kInterruptOffered) {
        EXPECT_EQ(s.active_dialogue->comm_id, e.payload["comm_id"]);
      }
      if (e.kind == EventKind::kCommActivated && e.payload["counts_against_budget"]) {
        ++budgeted;
      }
      if (e.kind == EventKind::kBudgetExhausted) {
        ++exhausted_events;
        EXPECT_TRUE(s.budget_exhausted());
        EXPECT_EQ(s.interactions_used, budget);
      }
      if (!was_exhausted && s.budget_exhausted()) EXPECT_EQ(exhausted_events, 0);
      auto d = ActivatePreferred(s, reg, cfg);
      if (s.active_dialogue) {
        EXPECT_TRUE(std::holds_alternative<decision::RouteToDialogue>(d) ||
                    std::holds_alternative<decision::AnnounceSessionEnd>(d));
      }
    }
    EXPECT_LE(budgeted, budget);
    if (s.budget_exhausted() && !s.ended) {
      EXPECT_EQ(exhausted_events, 1) << "seed " << seed;
    }
    EXPECT_LE(exhausted_events, 1);
    exhausted_runs += exhausted_events;

    for (const auto& turn : run.turns) {
      for (const auto& m : turn.received) {
        if (m.type != "comm.menu") continue;
        ++menus_checked;
        for (const auto& item : m.body["items"]) {
          const auto* comm = reg.Find(item["comm_id"].get<std::string>());
          ASSERT_NE(comm, nullptr);
          EXPECT_GT(comm->ConfidenceToActivate(turn.state_after), 0.0);
        }
      }
    }
  }
  EXPECT_GT(exhausted_runs, 10);
  EXPECT_GT(menus_checked, 1000);
}

// Feedback communications never move the counter; aborted dialogues leave
// story, sketch and reports as they were at activation.
TEST(CommsProperty, FeedbackFreeAndAbortsInert) {
  int feedback = 0, aborts = 0;
  for (uint64_t seed = 500; seed < 620; ++seed) {
    auto run = testing::RunRandomSession(seed, seed % 2 ? Condition::kLocal : Condition::kGlobal,
                                         100);
    SessionState s, at_activation;
    for (const auto& e : run.log) {
      SessionState before = s;
      ASSERT_TRUE(ApplyEvent(s, e).ok());
      if (e.kind == EventKind::kInterruptOffered) at_activation = before;
      if (e.kind == EventKind::kCommActivated) {
        at_activation = before;
        if (!e.payload["counts_against_budget"].get<bool>()) {
          ++feedback;
          EXPECT_EQ(s.interactions_used, before.interactions_used);
        }
      }
      if (e.kind == EventKind::kDialogueStep && e.payload["outcome"] == "aborted" &&
          !e.payload.contains("error")) {
        ++aborts;
        EXPECT_EQ(s.story, at_activation.story);
        EXPECT_EQ(s.sketch, at_activation.sketch);
        EXPECT_EQ(s.goal_reports, at_activation.goal_reports);
        EXPECT_EQ(s.feeling_reports, at_activation.feeling_reports);
        EXPECT_FALSE(s.active_dialogue.has_value());
      }
    }
  }
  EXPECT_GT(feedback, 100);
  EXPECT_GT(aborts, 20);
}

}  // namespace
}  // namespace cocreate
