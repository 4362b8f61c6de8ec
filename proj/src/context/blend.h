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

#ifndef COCREATE_CONTEXT_BLEND_H_
#define COCREATE_CONTEXT_BLEND_H_

#include <map>
#include <string>

#include "absl/status/statusor.h"
#include "core/types.h"

namespace cocreate {

// Topic label used when the sketch carries no control points.
inline constexpr char kGenericTopic[] = "generic";

// Per-topic steering weights at one line. Each control point contributes a
// Gaussian kernel centred on the middle of its range with spread
// `sketch.sigma`; kernels are normalized to sum to one and then summed per
// topic. Fails with kNoControlSignal on an empty sketch.
absl::StatusOr<std::map<std::string, double>> BlendWeights(
    int line_index, const SketchSpec& sketch);

// Topic with the largest blend weight at `line_index`. Ties go to the topic
// with the smallest control-point centre, then lexicographically.
// Returns kGenericTopic for an empty sketch.
std::string DominantTopic(int line_index, const SketchSpec& sketch);

}  // namespace cocreate

#endif  // COCREATE_CONTEXT_BLEND_H_
