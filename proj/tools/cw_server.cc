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

// Runs the session service until SIGINT or SIGTERM.

#include <csignal>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "service/config.h"
#include "service/server.h"
#include "service/session_service.h"

int main(int argc, char** argv) {
  CLI::App app{"Co-creative session server"};
  std::string config_file;
  bool no_recover = false;
  app.add_option("--config", config_file, "JSON config file");
  app.add_flag("--no-recover", no_recover, "Do not reload existing session logs");
  CLI11_PARSE(app, argc, argv);

  // Block the signals before any thread starts so only sigwait sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  std::optional<std::filesystem::path> file;
  if (!config_file.empty()) file = config_file;
  auto config = cocreate::LoadServiceConfig(file);
  if (!config.ok()) {
    std::cerr << "config: " << config.status() << "\n";
    return 2;
  }

  cocreate::SessionService::Options options;
  options.config = *config;
  auto service = cocreate::SessionService::Create(std::move(options));
  if (!service.ok()) {
    std::cerr << "startup: " << service.status() << "\n";
    return 1;
  }
  if (!no_recover) {
    auto restored = (*service)->RecoverSessions();
    if (!restored.ok()) {
      std::cerr << "recovery: " << restored.status() << "\n";
      return 1;
    }
    if (*restored > 0) std::cerr << "restored " << *restored << " sessions\n";
  }

  cocreate::Server server(**service);
  if (auto s = server.Start(config->listen_address); !s.ok()) {
    std::cerr << s << "\n";
    return 1;
  }
  std::cerr << "listening on port " << server.port() << ", logs in "
            << config->log_dir.string() << "\n";

  int sig = 0;
  sigwait(&signals, &sig);
  std::cerr << "shutting down\n";
  server.Stop();
  return 0;
}
