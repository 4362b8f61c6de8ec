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

#ifndef COCREATE_CONTEXT_MOCK_GENERATOR_H_
#define COCREATE_CONTEXT_MOCK_GENERATOR_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "core/types.h"

namespace cocreate {

inline constexpr size_t kMockVocabularySize = 64;
const std::array<std::string_view, kMockVocabularySize>& MockVocabulary();

// Inputs to the word-choice hash. Stable across platforms.
struct MockSeed {
  uint64_t session_seed = 0;
  uint64_t vocabulary_salt = 0;
  int64_t generation_counter = 0;
};

uint64_t MockWordHash(const MockSeed& seed, int line_index,
                      std::string_view topic);

// Deterministic stand-in for a steered language model. Produces
// "[<dominant topic>] <word>"; when `prompt` is given the line text is the
// prompt verbatim (the caller decides whether the prompt applies).
Line MockGenerateLine(int line_index, const SketchSpec& sketch,
                      const std::optional<std::string>& prompt,
                      const MockSeed& seed);

}  // namespace cocreate

#endif  // COCREATE_CONTEXT_MOCK_GENERATOR_H_
