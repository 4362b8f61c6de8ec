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

#include "service/scripted_client.h"

#include <algorithm>
#include <utility>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "core/errors.h"
#include "core/json_codec.h"
#include "core/strings.h"
#include "httplib.h"

namespace cocreate {
namespace {

std::vector<std::string> MenuIds(const json& menu) {
  std::vector<std::string> ids;
  for (const auto& item : menu.at("items")) ids.push_back(item.at("comm_id"));
  return ids;
}

std::string Join(const std::vector<std::string>& items) {
  std::string out = "[";
  for (size_t i = 0; i < items.size(); ++i) {
    absl::StrAppend(&out, i ? ", " : "", items[i]);
  }
  return out + "]";
}

const json* LastOfType(const std::vector<json>& received, std::string_view type) {
  for (auto it = received.rbegin(); it != received.rend(); ++it) {
    if (it->value("type", "") == type) return &*it;
  }
  return nullptr;
}

std::string Types(const std::vector<json>& received) {
  std::vector<std::string> types;
  for (const auto& m : received) types.push_back(m.value("type", "?"));
  return Join(types);
}

const json* CanvasLine(const ClientView& view, int index) {
  if (!view.canvas.has_value()) return nullptr;
  for (const auto& line : view.canvas->at("lines")) {
    if (line.at("index") == index) return &line;
  }
  return nullptr;
}

}  // namespace

absl::StatusOr<std::vector<json>> InProcessTransport::Send(
    const std::optional<std::string>& session_id, const json& message) {
  const auto replies = service_.HandleJson(session_id, message);
  std::vector<json> out;
  for (const auto& r : replies) out.push_back(r.ToJson());
  return out;
}

absl::StatusOr<json> InProcessTransport::FetchState(const std::string& session_id) {
  auto state = service_.GetState(session_id);
  if (!state.ok()) return state.status();
  return json(*state);
}

absl::StatusOr<std::vector<SessionEvent>> InProcessTransport::FetchLog(
    const std::string& session_id) {
  return service_.LoadSessionLog(session_id);
}

HttpTransport::HttpTransport(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {
  while (absl::EndsWith(base_url_, "/")) base_url_.pop_back();
}

absl::StatusOr<json> HttpTransport::Request(const std::string& method,
                                            const std::string& path,
                                            const json* body) {
  httplib::Client client(base_url_);
  const auto seconds = timeout_.count() / 1000;
  const auto micros = (timeout_.count() % 1000) * 1000;
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);
  httplib::Result result = method == "POST"
                               ? client.Post(path, body->dump(), "application/json")
                               : client.Get(path);
  if (!result) {
    const auto error = result.error();
    if (error == httplib::Error::Read || error == httplib::Error::ConnectionTimeout ||
        error == httplib::Error::Write) {
      return MakeError(ErrorCode::kScriptTimeout,
                       absl::StrCat("no response from ", base_url_, path, ": ",
                                    httplib::to_string(error)));
    }
    return absl::UnavailableError(absl::StrCat(
        "request to ", base_url_, path, " failed: ", httplib::to_string(error)));
  }
  json reply = json::parse(result->body, nullptr, /*allow_exceptions=*/false);
  if (reply.is_discarded()) {
    return absl::DataLossError(
        absl::StrCat(base_url_, path, " returned HTTP ", result->status, " non-JSON"));
  }
  return reply;
}

absl::StatusOr<std::vector<json>> HttpTransport::Send(
    const std::optional<std::string>& session_id, const json& message) {
  const std::string path =
      session_id.has_value() ? absl::StrCat("/session/", *session_id, "/message")
                             : std::string("/session");
  auto reply = Request("POST", path, &message);
  if (!reply.ok()) return reply.status();
  if (!reply->is_array()) return absl::DataLossError("expected a message array");
  return reply->get<std::vector<json>>();
}

absl::StatusOr<json> HttpTransport::FetchState(const std::string& session_id) {
  auto reply = Request("GET", absl::StrCat("/session/", session_id, "/state"), nullptr);
  if (!reply.ok()) return reply.status();
  if (reply->is_array()) {
    return MakeError(ErrorCode::kUnknownSession,
                     absl::StrCat("no state for ", session_id));
  }
  return reply;
}

absl::StatusOr<std::vector<SessionEvent>> HttpTransport::FetchLog(
    const std::string& session_id) {
  auto reply = Request("GET", absl::StrCat("/session/", session_id, "/log"), nullptr);
  if (!reply.ok()) return reply.status();
  std::vector<SessionEvent> events;
  for (const auto& j : *reply) {
    if (j.contains("type") && j["type"] == "error") {
      return MakeError(ErrorCode::kUnknownSession,
                       j.value("message", std::string("no log")));
    }
    auto event = EventFromJson(j);
    if (!event.ok()) return event.status();
    events.push_back(*std::move(event));
  }
  return events;
}

void ClientView::Apply(const json& message) {
  const std::string type = message.value("type", "");
  if (type == "canvas.story") {
    canvas = message;
  } else if (type == "comm.menu") {
    menu = message;
  } else if (type == "budget.update") {
    budget = message;
  } else if (type == "session.ended") {
    ended = true;
  }
}

std::string CheckPredicate(const json& predicate, const std::vector<json>& received,
                           const ClientView& view) {
  if (!predicate.is_object() || predicate.size() != 1) {
    return absl::StrCat("malformed predicate ", predicate.dump());
  }
  const std::string key = predicate.begin().key();
  const json& arg = predicate.begin().value();
  auto count = [&](std::string_view type) {
    return std::count_if(received.begin(), received.end(), [&](const json& m) {
      return m.value("type", "") == type;
    });
  };

  try {
    if (key == "has") {
      if (count(arg.get<std::string>()) == 0) {
        return absl::StrCat("expected a ", arg.get<std::string>(), " message, got ",
                            Types(received));
      }
    } else if (key == "lacks") {
      if (count(arg.get<std::string>()) != 0) {
        return absl::StrCat("unexpected ", arg.get<std::string>(), " message in ",
                            Types(received));
      }
    } else if (key == "count") {
      const auto n = count(arg.at("type").get<std::string>());
      if (n != arg.at("n").get<int>()) {
        return absl::StrCat("expected ", arg.at("n").get<int>(), " ",
                            arg.at("type").get<std::string>(), " messages, got ", n);
      }
    } else if (key == "first" || key == "last") {
      if (received.empty()) return "no messages received";
      const json& m = key == "first" ? received.front() : received.back();
      if (m.value("type", "") != arg.get<std::string>()) {
        return absl::StrCat("expected ", key, " message ", arg.get<std::string>(),
                            ", got ", Types(received));
      }
    } else if (key == "error") {
      for (const auto& m : received) {
        if (m.value("type", "") == "error" && m.at("code") == arg) return "";
      }
      return absl::StrCat("expected error ", arg.dump(), ", got ", Types(received));
    } else if (key == "no_error") {
      if (const json* e = LastOfType(received, "error")) {
        return absl::StrCat("unexpected error ", e->dump());
      }
    } else if (key == "menu" || key == "menu_contains" || key == "menu_lacks") {
      const json* menu = LastOfType(received, "comm.menu");
      if (menu == nullptr) return absl::StrCat("no comm.menu in ", Types(received));
      const auto ids = MenuIds(*menu);
      const auto want = arg.get<std::vector<std::string>>();
      if (key == "menu" && ids != want) {
        return absl::StrCat("menu is ", Join(ids), ", expected ", Join(want));
      }
      for (const auto& id : want) {
        const bool present = std::find(ids.begin(), ids.end(), id) != ids.end();
        if (key == "menu_contains" && !present) {
          return absl::StrCat("menu ", Join(ids), " lacks ", id);
        }
        if (key == "menu_lacks" && present) {
          return absl::StrCat("menu ", Join(ids), " offers ", id);
        }
      }
    } else if (key == "chat_contains") {
      const std::string needle = arg.get<std::string>();
      for (const auto& m : received) {
        if (m.value("type", "") == "chat.agent" &&
            absl::StrContains(m.value("text", ""), needle)) {
          return "";
        }
      }
      return absl::StrCat("no chat.agent containing '", needle, "'");
    } else if (key == "budget") {
      if (!view.budget) return "no budget.update seen";
      if (view.budget->at("used") != arg.at("used") ||
          view.budget->at("limit") != arg.at("limit")) {
        return absl::StrCat("budget is ", view.budget->at("used").dump(), "/",
                            view.budget->at("limit").dump(), ", expected ",
                            arg.at("used").dump(), "/", arg.at("limit").dump());
      }
    } else if (key == "ended") {
      if (view.ended != arg.get<bool>()) {
        return absl::StrCat("ended is ", view.ended ? "true" : "false");
      }
    } else if (key == "line_topic") {
      for (int i = arg.at("from").get<int>(); i <= arg.at("to").get<int>(); ++i) {
        const json* line = CanvasLine(view, i);
        if (line == nullptr) return absl::StrCat("no line ", i, " on the canvas");
        if (line->at("dominant_topic") != arg.at("topic")) {
          return absl::StrCat("line ", i, " topic is ",
                              line->at("dominant_topic").dump(), ", expected ",
                              arg.at("topic").dump());
        }
      }
    } else if (key == "line_text") {
      const json* line = CanvasLine(view, arg.at("line").get<int>());
      if (line == nullptr) return "line not on the canvas";
      if (line->at("text") != arg.at("text")) {
        return absl::StrCat("line ", arg.at("line").dump(), " is ",
                            line->at("text").dump(), ", expected ",
                            arg.at("text").dump());
      }
    } else if (key == "line_frozen") {
      const json* line = CanvasLine(view, arg.at("line").get<int>());
      if (line == nullptr) return "line not on the canvas";
      if (line->at("frozen") != arg.at("frozen")) {
        return absl::StrCat("line ", arg.at("line").dump(), " frozen is ",
                            line->at("frozen").dump());
      }
    } else {
      return absl::StrCat("unknown predicate '", key, "'");
    }
  } catch (const json::exception& ex) {
    return absl::StrCat("malformed predicate ", predicate.dump(), ": ", ex.what());
  }
  return "";
}

absl::StatusOr<ScriptResult> RunScript(ClientTransport& transport,
                                       const ClientScript& script) {
  ScriptResult result;
  auto run = [&](int index, const std::string& note, const json& message,
                 const std::vector<json>& expect) -> absl::Status {
    const std::optional<std::string> sid =
        index < 0 ? std::nullopt : std::optional<std::string>(result.session_id);
    auto received = transport.Send(sid, message);
    if (!received.ok()) return received.status();
    for (const auto& m : *received) result.view.Apply(m);
    result.transcript.push_back({note, message, *received});
    for (const auto& predicate : expect) {
      std::string failure = CheckPredicate(predicate, *received, result.view);
      if (!failure.empty()) {
        result.failed_step = index;
        result.failure = absl::StrCat(note.empty() ? "" : note + ": ",
                                      predicate.dump(), ": ", failure);
        break;
      }
    }
    return absl::OkStatus();
  };

  json create{{"type", "session.create"}, {"participant_id", script.participant_id}};
  if (script.condition) create["condition"] = *script.condition;
  if (auto s = run(-1, "create session", create, script.expect_on_create); !s.ok()) {
    return s;
  }
  const auto& first = result.transcript.front().received;
  for (const auto& m : first) {
    if (m.value("type", "") == "session.created") result.session_id = m["session_id"];
  }
  if (result.session_id.empty()) {
    result.failed_step = -1;
    result.failure = absl::StrCat("session was not created: ", Types(first));
    return result;
  }
  for (size_t i = 0; i < script.steps.size() && result.passed(); ++i) {
    const auto& step = script.steps[i];
    if (auto s = run(static_cast<int>(i), step.note, step.send, step.expect); !s.ok()) {
      return s;
    }
  }
  return result;
}

json TranscriptToJson(const std::vector<TranscriptEntry>& transcript) {
  json out = json::array();
  for (const auto& e : transcript) {
    out.push_back(json{{"note", e.note}, {"sent", e.sent}, {"received", e.received}});
  }
  return out;
}

absl::StatusOr<ScriptStep> ScriptStepFromJson(const json& j) {
  if (!j.is_object() || !j.contains("send") || !j["send"].is_object()) {
    return absl::InvalidArgumentError("script step needs a 'send' object");
  }
  ScriptStep step;
  step.note = j.value("note", std::string());
  step.send = j["send"];
  if (j.contains("expect")) {
    if (!j["expect"].is_array()) {
      return absl::InvalidArgumentError("'expect' must be an array");
    }
    step.expect = j["expect"].get<std::vector<json>>();
  }
  return step;
}

}  // namespace cocreate
