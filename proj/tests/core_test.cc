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


#include <fstream>
#include <set>

#include "core/errors.h"
#include "core/events.h"
#include "core/json_codec.h"
#include "core/replay.h"
#include "core/types.h"
#include "gtest/gtest.h"
#include "service/event_log.h"
#include "test_util.h"

namespace cocreate {
namespace {

using testing::Fixture;

template <typename E, typename Parse>
void ExpectRoundTrip(std::initializer_list<E> values, Parse parse) {
  std::set<std::string> seen;
  for (E v : values) {
    std::string name(ToString(v));
    EXPECT_TRUE(seen.insert(name).second) << name;
    EXPECT_EQ(parse(name), v) << name;
  }
  EXPECT_EQ(parse("no-such-name"), std::nullopt);
}

TEST(EnumNames, RoundTrip) {
  ExpectRoundTrip({Initiator::kHuman, Initiator::kAgent}, ParseInitiator);
  ExpectRoundTrip({Mode::kElaboration, Mode::kReflection}, ParseMode);
  ExpectRoundTrip({Scope::kGlobal, Scope::kLocal, Scope::kRegional}, ParseScope);
  ExpectRoundTrip({Condition::kGlobal, Condition::kLocal}, ParseCondition);
  ExpectRoundTrip({FeelingKind::kFrustrated, FeelingKind::kSatisfied,
                   FeelingKind::kNeutral, FeelingKind::kOther},
                  ParseFeelingKind);
  ExpectRoundTrip({Likert::kStronglyDisagree, Likert::kDisagree, Likert::kNeutral,
                   Likert::kAgree, Likert::kStronglyAgree},
                  ParseLikert);
  ExpectRoundTrip({SurveyKey::kGoal1, SurveyKey::kGoal2, SurveyKey::kGoal3,
                   SurveyKey::kSatisfaction, SurveyKey::kFrustration},
                  ParseSurveyKey);
  ExpectRoundTrip({Actor::kHuman, Actor::kAgent, Actor::kSystem}, ParseActor);
}

TEST(EnumNames, WireSpellings) {
  EXPECT_EQ(ToString(Likert::kStronglyAgree), "strongly_agree");
  EXPECT_EQ(ToString(EventKind::kBudgetExhausted), "budget_exhausted");
  EXPECT_EQ(ToString(EventKind::kInterruptOffered), "interrupt_offered");
  EXPECT_EQ(ToString(SurveyKey::kGoal3), "goal3");
}

TEST(Errors, PayloadRoundTrip) {
  std::set<std::string_view> names;
  for (int i = 0; i <= static_cast<int>(ErrorCode::kInternal); ++i) {
    auto code = static_cast<ErrorCode>(i);
    absl::Status s = MakeError(code, "boom");
    EXPECT_FALSE(s.ok());
    EXPECT_EQ(GetErrorCode(s), code);
    EXPECT_TRUE(names.insert(ErrorCodeName(code)).second);
  }
  EXPECT_EQ(GetErrorCode(absl::InternalError("plain")), std::nullopt);
  EXPECT_EQ(ErrorCodeName(ErrorCode::kBudgetExhausted), "budget_exhausted");
}

TEST(Types, EmptyStory) {
  auto doc = StoryDocument::Empty(10);
  ASSERT_EQ(doc.num_lines(), 10);
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(doc.lines[i].index, i);
    EXPECT_EQ(doc.lines[i].text, "");
    EXPECT_FALSE(doc.lines[i].frozen);
  }
  EXPECT_TRUE(doc.InBounds(9));
  EXPECT_FALSE(doc.InBounds(10));
  EXPECT_FALSE(doc.InBounds(-1));
}

TEST(Types, ControlPointValidation) {
  EXPECT_TRUE(ValidateControlPoint({"sports", 5, 9}, 10).ok());
  EXPECT_TRUE(ValidateControlPoint({"sports", 3, 3}, 10).ok());
  EXPECT_FALSE(ValidateControlPoint({"sports", 6, 5}, 10).ok());
  EXPECT_FALSE(ValidateControlPoint({"sports", 0, 10}, 10).ok());
  EXPECT_FALSE(ValidateControlPoint({"sports", -1, 2}, 10).ok());
  EXPECT_FALSE(ValidateControlPoint({"  ", 0, 2}, 10).ok());
}

TEST(JsonCodec, SessionStateRoundTrip) {
  SessionState s;
  s.session_id = "s-1";
  s.participant_id = "p";
  s.condition = Condition::kLocal;
  s.story = StoryDocument::Empty(4);
  s.story.lines[2].text = "hi";
  s.story.lines[2].frozen = true;
  s.story.lines[2].dominant_topic = "sports";
  s.sketch.control_points.push_back({"sports", 1, 3});
  s.goal_reports.push_back({2, 5, "t"});
  s.feeling_reports.push_back({{FeelingKind::kOther, "meh"}, "t"});
  ExitSurvey survey;
  for (auto k : kAllSurveyKeys) survey.answers[k] = Likert::kAgree;
  s.exit_survey = survey;
  s.active_dialogue = DialogueState{"user_work", false, 1, {"3"}, std::nullopt};
  json j = s;
  EXPECT_EQ(j.get<SessionState>(), s);
}

TEST(JsonCodec, SurveyNeedsAllKeys) {
  json partial = {{"goal1", "agree"}};
  EXPECT_ANY_THROW(partial.get<ExitSurvey>());
  json bad = {{"goal1", "agree"}, {"goal2", "agree"}, {"goal3", "agree"},
              {"satisfaction", "agree"}, {"frustration", "sort_of"}};
  EXPECT_ANY_THROW(bad.get<ExitSurvey>());
}

SessionEvent Created(const std::string& sid = "s-x") {
  SessionEvent e;
  e.seq = 1;
  e.ts = "2026-01-01T00:00:00.000Z";
  e.session_id = sid;
  e.kind = EventKind::kSessionCreated;
  e.payload = {{"participant_id", "p"},
               {"condition", "global"},
               {"num_lines", 10},
               {"interaction_budget", 15},
               {"rng_seed", 3},
               {"sigma", 2.0},
               {"assignment", {{"mode", "random"}, {"seed", 0}}}};
  return e;
}

SessionEvent Activated(int64_t seq, int used, bool counts = true) {
  SessionEvent e;
  e.seq = seq;
  e.session_id = "s-x";
  e.actor = Actor::kHuman;
  e.kind = EventKind::kCommActivated;
  e.payload = {{"comm_id", "regenerate"},
               {"counts_against_budget", counts},
               {"interactions_used", used},
               {"dialogue", nullptr},
               {"utterance", ""}};
  return e;
}

TEST(Events, JsonLineRoundTrip) {
  SessionEvent e = Activated(2, 1);
  e.ts = "2026-01-01T00:00:01.000Z";
  std::string line = EventToJsonLine(e);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  auto back = ParseEventLine(line);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, e);
}

TEST(Events, DecodeErrors) {
  auto unknown = ParseEventLine(
      R"({"seq":1,"ts":"t","session_id":"s","actor":"human","kind":"teleport","payload":{}})");
  EXPECT_EQ(GetErrorCode(unknown.status()), ErrorCode::kUnsupportedEvent);
  auto garbage = ParseEventLine("{not json");
  EXPECT_EQ(GetErrorCode(garbage.status()), ErrorCode::kMalformedLog);
  auto missing = ParseEventLine(R"({"seq":1,"kind":"session_ended"})");
  EXPECT_EQ(GetErrorCode(missing.status()), ErrorCode::kMalformedLog);
}

TEST(Events, TimestampFormat) {
  std::string ts = NowRfc3339();
  ASSERT_EQ(ts.size(), 24u) << ts;
  EXPECT_EQ(ts[10], 'T');
  EXPECT_EQ(ts.back(), 'Z');
}

TEST(Replay, CreatedOnlyIsFresh) {
  std::vector<SessionEvent> log{Created()};
  auto s = Replay(log);
  ASSERT_TRUE(s.ok()) << s.status();
  EXPECT_EQ(s->interactions_used, 0);
  EXPECT_FALSE(s->ended);
  EXPECT_EQ(s->story, StoryDocument::Empty(10));
  EXPECT_EQ(s->participant_id, "p");
  EXPECT_EQ(s->rng_seed, 3u);
}

TEST(Replay, CountsBudgetedActivations) {
  std::vector<SessionEvent> log{Created(), Activated(2, 1), Activated(3, 2)};
  auto s = Replay(log);
  ASSERT_TRUE(s.ok()) << s.status();
  EXPECT_EQ(s->interactions_used, 2);
}

TEST(Replay, FeedbackActivationsAreFree) {
  std::vector<SessionEvent> log{Created(), Activated(2, 0, false), Activated(3, 1)};
  auto s = Replay(log);
  ASSERT_TRUE(s.ok()) << s.status();
  EXPECT_EQ(s->interactions_used, 1);
}

TEST(Replay, RejectsInconsistentLogs) {
  EXPECT_EQ(GetErrorCode(Replay({}).status()), ErrorCode::kMalformedLog);
  std::vector<SessionEvent> gap{Created(), Activated(3, 1)};
  EXPECT_EQ(GetErrorCode(Replay(gap).status()), ErrorCode::kMalformedLog);
  std::vector<SessionEvent> no_start{Activated(1, 1)};
  EXPECT_EQ(GetErrorCode(Replay(no_start).status()), ErrorCode::kMalformedLog);
  std::vector<SessionEvent> wrong_count{Created(), Activated(2, 2)};
  EXPECT_EQ(GetErrorCode(Replay(wrong_count).status()), ErrorCode::kMalformedLog);
  auto other = Activated(2, 1);
  other.session_id = "s-y";
  std::vector<SessionEvent> mixed{Created(), other};
  EXPECT_EQ(GetErrorCode(Replay(mixed).status()), ErrorCode::kMalformedLog);

  SessionEvent end;
  end.seq = 2;
  end.session_id = "s-x";
  end.kind = EventKind::kSessionEnded;
  end.payload = {{"reason", "user"}};
  std::vector<SessionEvent> after_end{Created(), end, Activated(3, 1)};
  EXPECT_EQ(GetErrorCode(Replay(after_end).status()), ErrorCode::kMalformedLog);
}

TEST(Replay, OverBudgetIsMalformed) {
  std::vector<SessionEvent> log{Created()};
  log[0].payload["interaction_budget"] = 1;
  log.push_back(Activated(2, 1));
  log.push_back(Activated(3, 2));
  EXPECT_EQ(GetErrorCode(Replay(log).status()), ErrorCode::kMalformedLog);
}

TEST(Replay, ApplyEventIsAtomic) {
  std::vector<SessionEvent> log{Created()};
  auto s = Replay(log);
  ASSERT_TRUE(s.ok());
  SessionState before = *s;
  SessionEvent bad = Activated(2, 1);
  bad.payload.erase("counts_against_budget");
  EXPECT_FALSE(ApplyEvent(*s, bad).ok());
  EXPECT_EQ(*s, before);
}

TEST(Replay, TwentyEventFixtureMatchesLiveState) {
  auto log = LoadEventLog(Fixture("replay20.jsonl"));
  ASSERT_TRUE(log.ok()) << log.status();
  ASSERT_EQ(log->size(), 20u);
  std::ifstream in(Fixture("replay20.state.json"));
  json live = json::parse(in);
  auto replayed = Replay(*log);
  ASSERT_TRUE(replayed.ok()) << replayed.status();
  EXPECT_EQ(json(*replayed), live);
  EXPECT_EQ(replayed->goal_reports.size(), 1u);
  EXPECT_EQ(replayed->interactions_used, 3);
}

TEST(Replay, DeterministicFromBytes) {
  std::ifstream in(Fixture("replay20.jsonl"));
  std::string bytes((std::istreambuf_iterator<char>(in)), {});
  std::vector<json> outs;
  for (int run = 0; run < 3; ++run) {
    std::vector<SessionEvent> events;
    std::istringstream lines(bytes);
    for (std::string line; std::getline(lines, line);) {
      auto e = ParseEventLine(line);
      ASSERT_TRUE(e.ok());
      events.push_back(*e);
    }
    auto s = Replay(events);
    ASSERT_TRUE(s.ok());
    outs.push_back(*s);
  }
  EXPECT_EQ(outs[0].dump(), outs[1].dump());
  EXPECT_EQ(outs[1].dump(), outs[2].dump());
}

// Budget monotonicity and frozen-line conservation over every prefix of
// randomly driven sessions.
TEST(ReplayProperty, MonotoneBudgetAndFrozenConservation) {
  int story_updates = 0;
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    auto run = testing::RunRandomSession(
        seed, seed % 2 ? Condition::kLocal : Condition::kGlobal, 80);
    ASSERT_FALSE(run.log.empty());
    SessionState s;
    int last_used = 0;
    for (const auto& e : run.log) {
      SessionState before = s;
      ASSERT_TRUE(ApplyEvent(s, e).ok()) << EventToJsonLine(e);
      EXPECT_GE(s.interactions_used, last_used);
      last_used = s.interactions_used;
      if (e.kind == EventKind::kStoryUpdated) {
        ++story_updates;
        for (int i = 0; i < before.story.num_lines(); ++i) {
          if (before.story.lines[i].frozen) {
            EXPECT_EQ(before.story.lines[i].text, s.story.lines[i].text)
                << "seed " << seed << " line " << i;
          }
        }
      }
    }
    EXPECT_EQ(json(s), json(run.final_state)) << "seed " << seed;
  }
  EXPECT_GT(story_updates, 50);
}

}  // namespace
}  // namespace cocreate
