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

#ifndef COCREATE_SERVICE_SERVER_H_
#define COCREATE_SERVICE_SERVER_H_

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "absl/status/status.h"
#include "service/session_service.h"

namespace cocreate {

// HTTP and WebSocket front door for a SessionService.
//
//   GET  /healthz                  {"ok": true}
//   POST /session                  session.create body -> [messages]
//   POST /session/{id}/message     any client message -> [messages]
//   GET  /session/{id}/state       session state
//   GET  /session/{id}/log         [events]
//   GET  /ws, /ws/{id}             WebSocket: one JSON message per frame
//
// One thread per connection; each connection handles its requests in order.
class Server {
 public:
  explicit Server(SessionService& service);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // `address` is host:port; port 0 picks a free port.
  absl::Status Start(const std::string& address);
  uint16_t port() const { return port_; }
  // Closes the listener and all connections, then joins their threads.
  void Stop();

 private:
  struct Connection;
  class Impl;

  void AcceptLoop();
  void ReapFinished();

  SessionService& service_;
  std::unique_ptr<Impl> impl_;
  std::atomic<bool> stopping_{false};
  uint16_t port_ = 0;
  std::thread accept_thread_;
  std::mutex connections_mu_;
  std::list<std::unique_ptr<Connection>> connections_;
};

// Splits "host:port". A missing host means 0.0.0.0.
absl::Status ParseListenAddress(const std::string& address, std::string* host,
                                uint16_t* port);

}  // namespace cocreate

#endif  // COCREATE_SERVICE_SERVER_H_
