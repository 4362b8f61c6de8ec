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

#include "context/creative_context.h"

#include <utility>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "context/mock_generator.h"
#include "context/remote_backend.h"
#include "core/errors.h"
#include "core/overloaded.h"

namespace cocreate {
namespace {

absl::Status CheckIndex(const StoryDocument& story, int index) {
  if (!story.InBounds(index)) {
    return MakeError(ErrorCode::kInvalidQuery,
                     absl::StrCat("line ", index, " is outside 0-",
                                  story.num_lines() - 1));
  }
  return absl::OkStatus();
}

}  // namespace

GeneratorState GeneratorState::FromSession(const SessionState& session) {
  return GeneratorState{session.story, session.sketch, session.prompt,
                        session.prompt_overridden};
}

absl::StatusOr<std::vector<Line>> MockBackend::Generate(
    const GenerationRequest& request) const {
  const MockSeed seed{request.session_seed, salt_, request.generation_counter};
  std::vector<Line> lines;
  lines.reserve(request.story.lines.size());
  for (int i = 0; i < request.story.num_lines(); ++i) {
    lines.push_back(MockGenerateLine(
        i, request.sketch, i == 0 ? request.line0_prompt : std::nullopt, seed));
  }
  return lines;
}

absl::Status GeneratorConfig::Validate() const {
  if (!(sigma > 0.0)) {
    return absl::InvalidArgumentError("generator sigma must be positive");
  }
  if (backend == GeneratorBackendKind::kRemote &&
      (!remote_url.has_value() || remote_url->empty())) {
    return absl::InvalidArgumentError("remote backend requires remote_url");
  }
  if (request_timeout.count() <= 0) {
    return absl::InvalidArgumentError("request timeout must be positive");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::shared_ptr<const StoryBackend>> MakeBackend(
    const GeneratorConfig& config) {
  if (auto status = config.Validate(); !status.ok()) return status;
  switch (config.backend) {
    case GeneratorBackendKind::kMock:
      return std::make_shared<const MockBackend>(config.vocabulary_seed_salt);
    case GeneratorBackendKind::kRemote:
      return std::make_shared<const RemoteBackend>(*config.remote_url,
                                                   config.request_timeout);
  }
  return absl::InvalidArgumentError("unknown generator backend");
}

StoryCreativeContext::StoryCreativeContext(
    GeneratorState state, std::shared_ptr<const StoryBackend> backend,
    uint64_t session_seed)
    : state_(std::move(state)),
      backend_(std::move(backend)),
      session_seed_(session_seed) {}

absl::StatusOr<QueryAck> StoryCreativeContext::ExecuteQuery(
    const ContextQuery& q) {
  GeneratorState next = state_;
  QueryAck ack;
  if (auto status = Apply(next, q, ack); !status.ok()) return status;
  state_ = std::move(next);
  ack.generation_counter = state_.story.generation_counter;
  return ack;
}

absl::Status StoryCreativeContext::Apply(GeneratorState& s,
                                         const ContextQuery& q,
                                         QueryAck& ack) const {
  return std::visit(
      Overloaded{
          [&](const query::SetPrompt& v) -> absl::Status {
            s.prompt = v.text;
            s.prompt_overridden = false;
            return absl::OkStatus();
          },
          [&](const query::SetSketch& v) -> absl::Status {
            if (auto st = ValidateSketch(v.sketch, s.story.num_lines());
                !st.ok()) {
              return st;
            }
            s.sketch = v.sketch;
            ack.sketch_changed = true;
            return absl::OkStatus();
          },
          [&](const query::AddSketchPoint& v) -> absl::Status {
            ControlPoint point = v.point;
            point.topic = std::string(absl::StripAsciiWhitespace(point.topic));
            if (auto st = ValidateControlPoint(point, s.story.num_lines());
                !st.ok()) {
              return st;
            }
            s.sketch.control_points.push_back(std::move(point));
            ack.sketch_changed = true;
            return absl::OkStatus();
          },
          [&](const query::EditLine& v) -> absl::Status {
            if (auto st = CheckIndex(s.story, v.index); !st.ok()) return st;
            Line& line = s.story.lines[v.index];
            if (line.frozen) {
              return MakeError(ErrorCode::kInvalidQuery,
                               absl::StrCat("line ", v.index,
                                            " is frozen; unfreeze it before editing"));
            }
            line.text = v.text;
            line.dominant_topic.reset();
            if (v.index == 0) s.prompt_overridden = true;
            ack.story_changed = true;
            return absl::OkStatus();
          },
          [&](const query::FreezeLine& v) -> absl::Status {
            if (auto st = CheckIndex(s.story, v.index); !st.ok()) return st;
            s.story.lines[v.index].frozen = true;
            ack.story_changed = true;
            return absl::OkStatus();
          },
          [&](const query::UnfreezeLine& v) -> absl::Status {
            if (auto st = CheckIndex(s.story, v.index); !st.ok()) return st;
            s.story.lines[v.index].frozen = false;
            ack.story_changed = true;
            return absl::OkStatus();
          },
          [&](const query::Regenerate&) -> absl::Status {
            ack.story_changed = true;
            return Regenerate(s);
          },
      },
      q);
}

absl::Status StoryCreativeContext::Regenerate(GeneratorState& s) const {
  const int64_t next_counter = s.story.generation_counter + 1;
  const bool prompt_applies = s.prompt.has_value() && !s.prompt_overridden &&
                              !s.story.lines.empty() && !s.story.lines[0].frozen;
  GenerationRequest request{
      .story = s.story,
      .sketch = s.sketch,
      .line0_prompt = prompt_applies ? s.prompt : std::nullopt,
      .prompt = s.prompt,
      .session_seed = session_seed_,
      .generation_counter = next_counter,
  };
  auto generated = backend_->Generate(request);
  if (!generated.ok()) return generated.status();
  if (static_cast<int>(generated->size()) != s.story.num_lines()) {
    return MakeError(ErrorCode::kProtocolViolation,
                     absl::StrCat("generator returned ", generated->size(),
                                  " lines for a ", s.story.num_lines(),
                                  "-line story"));
  }

  for (int i = 0; i < s.story.num_lines(); ++i) {
    Line& line = s.story.lines[i];
    if (line.frozen) continue;
    line.text = std::move((*generated)[i].text);
    line.dominant_topic = std::move((*generated)[i].dominant_topic);
  }
  if (prompt_applies) s.story.lines[0].text = *s.prompt;
  s.story.generation_counter = next_counter;
  return absl::OkStatus();
}

}  // namespace cocreate
