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

// The generator abstraction. A CreativeContext accepts structured queries
// and hands out snapshots of the artifact it maintains. The story context
// delegates the actual text production to a pluggable StoryBackend (the
// deterministic mock, or a remote service).

#ifndef COCREATE_CONTEXT_CREATIVE_CONTEXT_H_
#define COCREATE_CONTEXT_CREATIVE_CONTEXT_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "context/query.h"
#include "core/types.h"

namespace cocreate {

struct QueryAck {
  bool story_changed = false;
  bool sketch_changed = false;
  int64_t generation_counter = 0;
};

class CreativeContext {
 public:
  virtual ~CreativeContext() = default;

  // Applies `q`. On error the context is unchanged.
  virtual absl::StatusOr<QueryAck> ExecuteQuery(const ContextQuery& q) = 0;

  // Snapshot copy; later queries do not affect it.
  virtual StoryDocument GetGeneratedContent() const = 0;
};

// Everything a story generator needs to carry between queries.
struct GeneratorState {
  StoryDocument story;
  SketchSpec sketch;
  std::optional<std::string> prompt;
  bool prompt_overridden = false;

  static GeneratorState FromSession(const SessionState& session);
  bool operator==(const GeneratorState&) const = default;
};

struct GenerationRequest {
  const StoryDocument& story;
  const SketchSpec& sketch;
  // Prompt to place on line 0, already filtered for freeze/manual-edit rules.
  std::optional<std::string> line0_prompt;
  // The stored prompt regardless of whether it still applies to line 0.
  std::optional<std::string> prompt;
  uint64_t session_seed = 0;
  // Counter value the new generation will carry.
  int64_t generation_counter = 0;
};

// Produces a full set of lines for one regeneration. Implementations may
// return anything for frozen lines; the context keeps the frozen text.
class StoryBackend {
 public:
  virtual ~StoryBackend() = default;
  virtual absl::StatusOr<std::vector<Line>> Generate(
      const GenerationRequest& request) const = 0;
};

class MockBackend final : public StoryBackend {
 public:
  explicit MockBackend(uint64_t vocabulary_salt = 0) : salt_(vocabulary_salt) {}
  absl::StatusOr<std::vector<Line>> Generate(
      const GenerationRequest& request) const override;

 private:
  uint64_t salt_;
};

enum class GeneratorBackendKind { kMock, kRemote };

struct GeneratorConfig {
  GeneratorBackendKind backend = GeneratorBackendKind::kMock;
  std::optional<std::string> remote_url;
  double sigma = kDefaultSigma;
  uint64_t vocabulary_seed_salt = 0;
  std::chrono::milliseconds request_timeout{30000};

  absl::Status Validate() const;
};

absl::StatusOr<std::shared_ptr<const StoryBackend>> MakeBackend(
    const GeneratorConfig& config);

class StoryCreativeContext final : public CreativeContext {
 public:
  StoryCreativeContext(GeneratorState state,
                       std::shared_ptr<const StoryBackend> backend,
                       uint64_t session_seed);

  absl::StatusOr<QueryAck> ExecuteQuery(const ContextQuery& q) override;
  StoryDocument GetGeneratedContent() const override { return state_.story; }

  const GeneratorState& state() const { return state_; }

 private:
  absl::Status Apply(GeneratorState& s, const ContextQuery& q,
                     QueryAck& ack) const;
  absl::Status Regenerate(GeneratorState& s) const;

  GeneratorState state_;
  std::shared_ptr<const StoryBackend> backend_;
  uint64_t session_seed_;
};

}  // namespace cocreate

#endif  // COCREATE_CONTEXT_CREATIVE_CONTEXT_H_
