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

// Frontend wire protocol. Every message is one JSON object with a "type"
// discriminator:
//
//   client -> server
//     session.create  {participant_id, condition?}
//     comm.select     {comm_id}
//     dialogue.reply  {text}
//     session.end     {}
//     survey.submit   {answers: {goal1, goal2, goal3, satisfaction,
//                                frustration}}
//     session.resume  {}   re-sends the current view after a reconnect
//   Client messages other than session.create name their session either
//   through the URL / channel binding or an explicit "session_id" field.
//
//   server -> client (all carry "session_id")
//     session.created {condition, budget}
//     chat.agent      {text}
//     comm.menu       {items: [{comm_id, label, scope, initiator, mode}]}
//     canvas.story    {lines: [{index, text, frozen, dominant_topic}],
//                      sketch: [{topic, start, end}]}
//     budget.update   {used, limit}
//     interrupt.offer {comm_id, label, prompt}
//     session.ended   {}
//     error           {code, message}

#ifndef COCREATE_SERVICE_PROTOCOL_H_
#define COCREATE_SERVICE_PROTOCOL_H_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "core/errors.h"
#include "core/types.h"
#include "json.hpp"

namespace cocreate {

namespace client {
struct CreateSession {
  std::string participant_id;
  std::optional<Condition> condition;
};
struct SelectComm {
  std::string comm_id;
};
struct DialogueReply {
  std::string text;
};
struct EndSession {};
struct SubmitSurvey {
  nlohmann::json answers;
};
struct ResumeSession {};
}  // namespace client

using ClientMessage =
    std::variant<client::CreateSession, client::SelectComm,
                 client::DialogueReply, client::EndSession,
                 client::SubmitSurvey, client::ResumeSession>;

struct ParsedClientMessage {
  ClientMessage message;
  std::optional<std::string> session_id;
};

absl::StatusOr<ParsedClientMessage> ParseClientMessage(const nlohmann::json& j);
nlohmann::json ClientMessageToJson(const ClientMessage& message);

struct ServerMessage {
  std::string type;
  std::string session_id;
  nlohmann::json body = nlohmann::json::object();

  nlohmann::json ToJson() const;
};

namespace server_msg {
ServerMessage SessionCreated(const std::string& session_id, Condition condition,
                             int budget);
ServerMessage ChatAgent(const std::string& session_id, std::string text);
ServerMessage CommMenu(const std::string& session_id,
                       const std::vector<CommunicationDescriptor>& items);
ServerMessage CanvasStory(const std::string& session_id,
                          const StoryDocument& story, const SketchSpec& sketch);
ServerMessage BudgetUpdate(const std::string& session_id, int used, int limit);
ServerMessage InterruptOffer(const std::string& session_id,
                             const std::string& comm_id,
                             const std::string& label, std::string prompt);
ServerMessage SessionEnded(const std::string& session_id);
ServerMessage Error(const std::string& session_id, ErrorCode code,
                    std::string_view message);
}  // namespace server_msg

nlohmann::json MessagesToJson(const std::vector<ServerMessage>& messages);

}  // namespace cocreate

#endif  // COCREATE_SERVICE_PROTOCOL_H_
