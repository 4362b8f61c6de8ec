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

#include "service/protocol.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "core/json_codec.h"
#include "core/overloaded.h"

namespace cocreate {
namespace {

absl::Status Invalid(std::string_view what) {
  return MakeError(ErrorCode::kInvalidMessage, what);
}

absl::StatusOr<std::string> RequireString(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    return Invalid(absl::StrCat("field '", key, "' must be a string"));
  }
  return j[key].get<std::string>();
}

}  // namespace

absl::StatusOr<ParsedClientMessage> ParseClientMessage(const json& j) {
  if (!j.is_object()) return Invalid("message must be a JSON object");
  auto type = RequireString(j, "type");
  if (!type.ok()) return type.status();

  ParsedClientMessage parsed;
  if (j.contains("session_id")) {
    if (!j["session_id"].is_string()) return Invalid("session_id must be a string");
    parsed.session_id = j["session_id"].get<std::string>();
  }

  if (*type == "session.create") {
    auto participant = RequireString(j, "participant_id");
    if (!participant.ok()) return participant.status();
    client::CreateSession create{*participant, std::nullopt};
    if (j.contains("condition") && !j["condition"].is_null()) {
      if (!j["condition"].is_string()) return Invalid("condition must be a string");
      create.condition = ParseCondition(j["condition"].get<std::string>());
      if (!create.condition) return Invalid("condition must be global or local");
    }
    parsed.message = std::move(create);
  } else if (*type == "comm.select") {
    auto comm_id = RequireString(j, "comm_id");
    if (!comm_id.ok()) return comm_id.status();
    parsed.message = client::SelectComm{*comm_id};
  } else if (*type == "dialogue.reply") {
    auto text = RequireString(j, "text");
    if (!text.ok()) return text.status();
    parsed.message = client::DialogueReply{*text};
  } else if (*type == "session.end") {
    parsed.message = client::EndSession{};
  } else if (*type == "survey.submit") {
    if (!j.contains("answers")) return Invalid("survey.submit needs answers");
    parsed.message = client::SubmitSurvey{j["answers"]};
  } else if (*type == "session.resume") {
    parsed.message = client::ResumeSession{};
  } else {
    return Invalid(absl::StrCat("unknown message type '", *type, "'"));
  }
  return parsed;
}

json ClientMessageToJson(const ClientMessage& message) {
  return std::visit(
      Overloaded{
          [](const client::CreateSession& m) {
            json j{{"type", "session.create"}, {"participant_id", m.participant_id}};
            if (m.condition) j["condition"] = *m.condition;
            return j;
          },
          [](const client::SelectComm& m) {
            return json{{"type", "comm.select"}, {"comm_id", m.comm_id}};
          },
          [](const client::DialogueReply& m) {
            return json{{"type", "dialogue.reply"}, {"text", m.text}};
          },
          [](const client::EndSession&) { return json{{"type", "session.end"}}; },
          [](const client::SubmitSurvey& m) {
            return json{{"type", "survey.submit"}, {"answers", m.answers}};
          },
          [](const client::ResumeSession&) {
            return json{{"type", "session.resume"}};
          },
      },
      message);
}

json ServerMessage::ToJson() const {
  json j = body;
  j["type"] = type;
  j["session_id"] = session_id;
  return j;
}

namespace server_msg {

ServerMessage SessionCreated(const std::string& session_id, Condition condition,
                             int budget) {
  return {"session.created", session_id,
          json{{"condition", condition}, {"budget", budget}}};
}

ServerMessage ChatAgent(const std::string& session_id, std::string text) {
  return {"chat.agent", session_id, json{{"text", std::move(text)}}};
}

ServerMessage CommMenu(const std::string& session_id,
                       const std::vector<CommunicationDescriptor>& items) {
  json list = json::array();
  for (const auto& d : items) {
    list.push_back(json{{"comm_id", d.comm_id},
                        {"label", d.label},
                        {"scope", d.tags.scope},
                        {"initiator", d.tags.initiator},
                        {"mode", d.tags.mode}});
  }
  return {"comm.menu", session_id, json{{"items", std::move(list)}}};
}

ServerMessage CanvasStory(const std::string& session_id,
                          const StoryDocument& story, const SketchSpec& sketch) {
  return {"canvas.story", session_id,
          json{{"lines", story.lines}, {"sketch", sketch.control_points}}};
}

ServerMessage BudgetUpdate(const std::string& session_id, int used, int limit) {
  return {"budget.update", session_id, json{{"used", used}, {"limit", limit}}};
}

ServerMessage InterruptOffer(const std::string& session_id,
                             const std::string& comm_id,
                             const std::string& label, std::string prompt) {
  return {"interrupt.offer", session_id,
          json{{"comm_id", comm_id}, {"label", label}, {"prompt", std::move(prompt)}}};
}

ServerMessage SessionEnded(const std::string& session_id) {
  return {"session.ended", session_id, json::object()};
}

ServerMessage Error(const std::string& session_id, ErrorCode code,
                    std::string_view message) {
  return {"error", session_id,
          json{{"code", ErrorCodeName(code)}, {"message", message}}};
}

}  // namespace server_msg

json MessagesToJson(const std::vector<ServerMessage>& messages) {
  json out = json::array();
  for (const auto& m : messages) out.push_back(m.ToJson());
  return out;
}

}  // namespace cocreate
