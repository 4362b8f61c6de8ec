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

#ifndef COCREATE_CONTEXT_STUB_GENERATOR_H_
#define COCREATE_CONTEXT_STUB_GENERATOR_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <thread>

#include "absl/status/status.h"

namespace httplib {
class Server;
}

namespace cocreate {

// A stand-in for a remote generator speaking the RemoteBackend protocol.
// Useful for exercising the remote path without a model.
class StubGenerator {
 public:
  enum class Mode {
    kEcho,       // "[topic] stub line i" for every requested line
    kShort,      // one line fewer than requested
    kError,      // HTTP 500
    kMalformed,  // 200 with a body that is not the expected JSON
  };

  StubGenerator(Mode mode, std::chrono::milliseconds delay);
  ~StubGenerator();

  StubGenerator(const StubGenerator&) = delete;
  StubGenerator& operator=(const StubGenerator&) = delete;

  // Port 0 picks a free port.
  absl::Status Start(const std::string& host, int port);
  void Stop();

  int port() const { return port_; }
  std::string url() const;
  int64_t requests() const { return requests_; }

 private:
  Mode mode_;
  std::chrono::milliseconds delay_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::string host_;
  int port_ = 0;
  std::atomic<int64_t> requests_{0};
};

}  // namespace cocreate

#endif  // COCREATE_CONTEXT_STUB_GENERATOR_H_
