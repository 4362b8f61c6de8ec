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

#include "context/query.h"

#include <exception>

#include "absl/strings/str_cat.h"
#include "core/errors.h"
#include "core/json_codec.h"
#include "core/overloaded.h"

namespace cocreate {

nlohmann::json QueryToJson(const ContextQuery& q) {
  return std::visit(
      Overloaded{
          [](const query::SetPrompt& v) {
            return json{{"type", "set_prompt"}, {"text", v.text}};
          },
          [](const query::SetSketch& v) {
            return json{{"type", "set_sketch"}, {"sketch", v.sketch}};
          },
          [](const query::AddSketchPoint& v) {
            return json{{"type", "add_sketch_point"},
                        {"topic", v.point.topic},
                        {"start", v.point.start_line},
                        {"end", v.point.end_line}};
          },
          [](const query::EditLine& v) {
            return json{{"type", "edit_line"}, {"index", v.index}, {"text", v.text}};
          },
          [](const query::FreezeLine& v) {
            return json{{"type", "freeze_line"}, {"index", v.index}};
          },
          [](const query::UnfreezeLine& v) {
            return json{{"type", "unfreeze_line"}, {"index", v.index}};
          },
          [](const query::Regenerate&) { return json{{"type", "regenerate"}}; },
      },
      q);
}

absl::StatusOr<ContextQuery> QueryFromJson(const nlohmann::json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "set_prompt") return query::SetPrompt{j.at("text").get<std::string>()};
    if (type == "set_sketch") return query::SetSketch{j.at("sketch").get<SketchSpec>()};
    if (type == "add_sketch_point") return query::AddSketchPoint{j.get<ControlPoint>()};
    if (type == "edit_line") {
      return query::EditLine{j.at("index").get<int>(), j.at("text").get<std::string>()};
    }
    if (type == "freeze_line") return query::FreezeLine{j.at("index").get<int>()};
    if (type == "unfreeze_line") return query::UnfreezeLine{j.at("index").get<int>()};
    if (type == "regenerate") return query::Regenerate{};
    return MakeError(ErrorCode::kInvalidQuery,
                     absl::StrCat("unknown query type '", type, "'"));
  } catch (const std::exception& ex) {
    return MakeError(ErrorCode::kInvalidQuery, ex.what());
  }
}

}  // namespace cocreate
