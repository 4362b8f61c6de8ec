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

#ifndef COCREATE_CONTEXT_QUERY_H_
#define COCREATE_CONTEXT_QUERY_H_

#include <string>
#include <variant>

#include "absl/status/statusor.h"
#include "core/types.h"
#include "json.hpp"

namespace cocreate {

namespace query {

struct SetPrompt {
  std::string text;
  bool operator==(const SetPrompt&) const = default;
};
struct SetSketch {
  SketchSpec sketch;
  bool operator==(const SetSketch&) const = default;
};
struct AddSketchPoint {
  ControlPoint point;
  bool operator==(const AddSketchPoint&) const = default;
};
// Rejected with kInvalidQuery while the line is frozen.
struct EditLine {
  int index = 0;
  std::string text;
  bool operator==(const EditLine&) const = default;
};
struct FreezeLine {
  int index = 0;
  bool operator==(const FreezeLine&) const = default;
};
struct UnfreezeLine {
  int index = 0;
  bool operator==(const UnfreezeLine&) const = default;
};
struct Regenerate {
  bool operator==(const Regenerate&) const = default;
};

}  // namespace query

// An instruction to the generator.
using ContextQuery =
    std::variant<query::SetPrompt, query::SetSketch, query::AddSketchPoint,
                 query::EditLine, query::FreezeLine, query::UnfreezeLine,
                 query::Regenerate>;

// {"type": "edit_line", "index": 3, "text": "..."} and so on.
nlohmann::json QueryToJson(const ContextQuery& q);
absl::StatusOr<ContextQuery> QueryFromJson(const nlohmann::json& j);

}  // namespace cocreate

#endif  // COCREATE_CONTEXT_QUERY_H_
