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

#include "context/stub_generator.h"

#include "absl/strings/str_cat.h"
#include "context/blend.h"
#include "core/json_codec.h"
#include "httplib.h"

namespace cocreate {

StubGenerator::StubGenerator(Mode mode, std::chrono::milliseconds delay)
    : mode_(mode), delay_(delay), server_(std::make_unique<httplib::Server>()) {
  server_->Post("/generate", [this](const httplib::Request& req,
                                    httplib::Response& res) {
    ++requests_;
    if (delay_.count() > 0) std::this_thread::sleep_for(delay_);
    if (mode_ == Mode::kError) {
      res.status = 500;
      res.set_content("{\"error\": \"stub failure\"}", "application/json");
      return;
    }
    if (mode_ == Mode::kMalformed) {
      res.set_content("{\"lines\": \"not a list\"", "application/json");
      return;
    }
    json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
    if (body.is_discarded() || !body.contains("num_lines")) {
      res.status = 400;
      return;
    }
    SketchSpec sketch;
    body.value("sketch", json::array()).get_to(sketch.control_points);
    int n = body["num_lines"].get<int>();
    if (mode_ == Mode::kShort) n = std::max(0, n - 1);
    json lines = json::array();
    for (int i = 0; i < n; ++i) {
      lines.push_back(absl::StrCat("[", DominantTopic(i, sketch), "] stub line ", i));
    }
    res.set_content(json{{"lines", lines}}.dump(), "application/json");
  });
}

StubGenerator::~StubGenerator() { Stop(); }

absl::Status StubGenerator::Start(const std::string& host, int port) {
  host_ = host;
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
  } else {
    port_ = server_->bind_to_port(host, port) ? port : -1;
  }
  if (port_ <= 0) {
    return absl::UnavailableError(absl::StrCat("cannot bind ", host, ":", port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return absl::OkStatus();
}

void StubGenerator::Stop() {
  if (!thread_.joinable()) return;
  server_->stop();
  thread_.join();
}

std::string StubGenerator::url() const {
  return absl::StrCat("http://", host_, ":", port_);
}

}  // namespace cocreate
