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

#include "context/mock_generator.h"

#include "absl/strings/str_cat.h"
#include "context/blend.h"
#include "core/strings.h"

namespace cocreate {
namespace {

constexpr std::array<std::string_view, kMockVocabularySize> kVocabulary = {
    "morning",  "market",   "ledger",   "contract", "merger",  "profit",
    "office",   "meeting",  "deadline", "investor", "startup", "revenue",
    "stadium",  "goal",     "referee",  "captain",  "penalty", "league",
    "coach",    "whistle",  "trophy",   "crowd",    "striker", "season",
    "river",    "lantern",  "harbor",   "window",   "garden",  "letter",
    "journey",  "promise",  "thunder",  "silence",  "mirror",  "bridge",
    "rumor",    "stranger", "engine",   "signal",   "ticket",  "forest",
    "castle",   "anchor",   "canvas",   "melody",   "shadow",  "compass",
    "kitchen",  "station",  "festival", "balcony",  "harvest", "courier",
    "island",   "library",  "winter",   "summit",   "factory", "orchard",
    "theater",  "voyage",   "parade",   "horizon",
};

constexpr uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr uint64_t Fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

const std::array<std::string_view, kMockVocabularySize>& MockVocabulary() {
  return kVocabulary;
}

uint64_t MockWordHash(const MockSeed& seed, int line_index,
                      std::string_view topic) {
  uint64_t h = SplitMix64(seed.session_seed);
  h = SplitMix64(h ^ seed.vocabulary_salt);
  h = SplitMix64(h ^ static_cast<uint64_t>(seed.generation_counter));
  h = SplitMix64(h ^ static_cast<uint64_t>(static_cast<int64_t>(line_index)));
  return SplitMix64(h ^ Fnv1a64(topic));
}

Line MockGenerateLine(int line_index, const SketchSpec& sketch,
                      const std::optional<std::string>& prompt,
                      const MockSeed& seed) {
  Line line;
  line.index = line_index;
  line.dominant_topic = DominantTopic(line_index, sketch);
  if (prompt.has_value()) {
    line.text = *prompt;
    return line;
  }
  const auto word =
      kVocabulary[MockWordHash(seed, line_index, *line.dominant_topic) %
                  kMockVocabularySize];
  line.text = absl::StrCat("[", *line.dominant_topic, "] ", Av(word));
  return line;
}

}  // namespace cocreate
