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

// Serves the remote generator protocol with canned replies.

#include <csignal>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "context/stub_generator.h"

int main(int argc, char** argv) {
  using Mode = cocreate::StubGenerator::Mode;
  CLI::App app{"Stub remote generator"};
  std::string host = "127.0.0.1";
  int port = 8090;
  int delay_ms = 0;
  Mode mode = Mode::kEcho;
  const std::map<std::string, Mode> modes{{"echo", Mode::kEcho},
                                          {"short", Mode::kShort},
                                          {"error", Mode::kError},
                                          {"malformed", Mode::kMalformed}};
  app.add_option("--host", host);
  app.add_option("--port", port);
  app.add_option("--delay-ms", delay_ms, "Delay before each reply");
  app.add_option("--mode", mode, "echo|short|error|malformed")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  CLI11_PARSE(app, argc, argv);

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  cocreate::StubGenerator stub(mode, std::chrono::milliseconds(delay_ms));
  if (auto s = stub.Start(host, port); !s.ok()) {
    std::cerr << s << "\n";
    return 1;
  }
  std::cerr << "stub generator at " << stub.url() << "\n";
  int sig = 0;
  sigwait(&signals, &sig);
  stub.Stop();
  return 0;
}
