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

#ifndef COCREATE_CONTEXT_REMOTE_BACKEND_H_
#define COCREATE_CONTEXT_REMOTE_BACKEND_H_

#include <chrono>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "context/creative_context.h"
#include "json.hpp"

namespace cocreate {

// Client for an external steered generator.
//
//   POST {remote_url}/generate
//   {"prompt": string|null, "num_lines": int,
//    "sketch": [{"topic", "start", "end"}], "frozen": [int]}
//   -> {"lines": [string x num_lines]}
//
// Transport failures, non-2xx replies and undecodable bodies map to
// kGeneratorUnavailable; a reply with the wrong number of lines maps to
// kProtocolViolation. Each call opens its own connection, so concurrent
// sessions never contend on a shared client.
class RemoteBackend final : public StoryBackend {
 public:
  RemoteBackend(std::string remote_url, std::chrono::milliseconds timeout);

  absl::StatusOr<std::vector<Line>> Generate(
      const GenerationRequest& request) const override;

  static nlohmann::json BuildRequestBody(const GenerationRequest& request);

 private:
  std::string origin_;       // scheme://host[:port]
  std::string path_prefix_;  // path component of remote_url, no trailing '/'
  std::chrono::milliseconds timeout_;
};

}  // namespace cocreate

#endif  // COCREATE_CONTEXT_REMOTE_BACKEND_H_
