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

#include "context/remote_backend.h"

#include <utility>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "context/blend.h"
#include "core/errors.h"
#include "core/json_codec.h"
#include "httplib.h"

namespace cocreate {

RemoteBackend::RemoteBackend(std::string remote_url,
                             std::chrono::milliseconds timeout)
    : timeout_(timeout) {
  const auto scheme_end = remote_url.find("://");
  const size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  const size_t path_start = remote_url.find('/', host_start);
  if (path_start == std::string::npos) {
    origin_ = std::move(remote_url);
  } else {
    origin_ = remote_url.substr(0, path_start);
    path_prefix_ = remote_url.substr(path_start);
    while (absl::EndsWith(path_prefix_, "/")) path_prefix_.pop_back();
  }
}

nlohmann::json RemoteBackend::BuildRequestBody(const GenerationRequest& request) {
  json frozen = json::array();
  for (const auto& line : request.story.lines) {
    if (line.frozen) frozen.push_back(line.index);
  }
  return json{{"prompt", request.prompt ? json(*request.prompt) : json(nullptr)},
              {"num_lines", request.story.num_lines()},
              {"sketch", request.sketch.control_points},
              {"frozen", std::move(frozen)}};
}

absl::StatusOr<std::vector<Line>> RemoteBackend::Generate(
    const GenerationRequest& request) const {
  httplib::Client client(origin_);
  const auto seconds = timeout_.count() / 1000;
  const auto micros = (timeout_.count() % 1000) * 1000;
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);

  const std::string body = BuildRequestBody(request).dump();
  auto result = client.Post(absl::StrCat(path_prefix_, "/generate"), body,
                            "application/json");
  if (!result) {
    return MakeError(ErrorCode::kGeneratorUnavailable,
                     absl::StrCat("remote generator request failed: ",
                                  httplib::to_string(result.error())));
  }
  if (result->status < 200 || result->status >= 300) {
    return MakeError(ErrorCode::kGeneratorUnavailable,
                     absl::StrCat("remote generator returned HTTP ",
                                  result->status));
  }

  auto reply = json::parse(result->body, nullptr, /*allow_exceptions=*/false);
  if (reply.is_discarded() || !reply.is_object() || !reply.contains("lines") ||
      !reply["lines"].is_array()) {
    return MakeError(ErrorCode::kGeneratorUnavailable,
                     "remote generator reply has no 'lines' array");
  }
  const json& texts = reply["lines"];
  for (const auto& t : texts) {
    if (!t.is_string()) {
      return MakeError(ErrorCode::kGeneratorUnavailable,
                       "remote generator reply contains a non-string line");
    }
  }
  if (static_cast<int>(texts.size()) != request.story.num_lines()) {
    return MakeError(ErrorCode::kProtocolViolation,
                     absl::StrCat("remote generator returned ", texts.size(),
                                  " lines, expected ",
                                  request.story.num_lines()));
  }

  std::vector<Line> lines;
  lines.reserve(texts.size());
  for (int i = 0; i < static_cast<int>(texts.size()); ++i) {
    Line line;
    line.index = i;
    line.text = texts[i].get<std::string>();
    // The remote service does not report topics; annotate with the steering
    // target instead.
    if (!request.sketch.empty()) line.dominant_topic = DominantTopic(i, request.sketch);
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace cocreate
