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

#include "service/server.h"

#include <sys/socket.h>

#include <utility>
#include <vector>

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "core/errors.h"
#include "core/json_codec.h"
#include "core/strings.h"

namespace cocreate {
namespace {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

using Request = http::request<http::string_body>;
using Response = http::response<http::string_body>;

Response JsonResponse(const Request& req, http::status status, const json& body) {
  Response res{status, req.version()};
  res.set(http::field::content_type, "application/json");
  res.keep_alive(req.keep_alive());
  res.body() = body.dump();
  res.prepare_payload();
  return res;
}

json ErrorBody(ErrorCode code, std::string_view message) {
  return MessagesToJson({server_msg::Error("", code, message)});
}

// Path segments without the query string, e.g. {"session", "s-1", "state"}.
std::vector<std::string> PathSegments(beast::string_view target) {
  std::string path(target.data(), target.size());
  path = path.substr(0, path.find('?'));
  return absl::StrSplit(path, '/', absl::SkipEmpty());
}

http::status StatusFor(const std::vector<ServerMessage>& messages) {
  for (const auto& m : messages) {
    if (m.type == "error" && m.body.value("code", "") == "no_session") {
      return http::status::not_found;
    }
  }
  return http::status::ok;
}

}  // namespace

absl::Status ParseListenAddress(const std::string& address, std::string* host,
                                uint16_t* port) {
  const size_t colon = address.rfind(':');
  if (colon == std::string::npos) {
    return absl::InvalidArgumentError(
        absl::StrCat("listen address must be host:port, got '", address, "'"));
  }
  *host = address.substr(0, colon);
  if (host->empty()) *host = "0.0.0.0";
  uint32_t p = 0;
  if (!absl::SimpleAtoi(address.substr(colon + 1), &p) || p > 65535) {
    return absl::InvalidArgumentError(absl::StrCat("bad port in '", address, "'"));
  }
  *port = static_cast<uint16_t>(p);
  return absl::OkStatus();
}

struct Server::Connection {
  std::thread thread;
  int fd = -1;
  std::atomic<bool> done{false};
};

class Server::Impl {
 public:
  explicit Impl(SessionService& service) : service_(service), acceptor_(io_) {}

  asio::io_context& io() { return io_; }
  tcp::acceptor& acceptor() { return acceptor_; }

  void Serve(tcp::socket socket) {
    beast::error_code ec;
    beast::flat_buffer buffer;
    for (;;) {
      Request req;
      http::read(socket, buffer, req, ec);
      if (ec) break;
      if (websocket::is_upgrade(req)) {
        ServeWebSocket(std::move(socket), std::move(req));
        return;
      }
      Response res = Route(req);
      http::write(socket, res, ec);
      if (ec || !res.keep_alive()) break;
    }
    socket.shutdown(tcp::socket::shutdown_send, ec);
  }

 private:
  Response Route(const Request& req) {
    const auto segments = PathSegments(req.target());
    const bool get = req.method() == http::verb::get;
    const bool post = req.method() == http::verb::post;

    if (get && segments.size() == 1 && segments[0] == "healthz") {
      return JsonResponse(req, http::status::ok, json{{"ok", true}});
    }
    if (segments.empty() || segments[0] != "session" || segments.size() > 3) {
      return JsonResponse(req, http::status::not_found,
                          ErrorBody(ErrorCode::kInvalidMessage, "no such endpoint"));
    }

    json body;
    if (post) {
      body = json::parse(req.body(), nullptr, /*allow_exceptions=*/false);
      if (body.is_discarded() || !body.is_object()) {
        return JsonResponse(req, http::status::bad_request,
                            ErrorBody(ErrorCode::kInvalidMessage,
                                      "request body must be a JSON object"));
      }
    }

    if (post && segments.size() == 1) {
      if (!body.contains("type")) body["type"] = "session.create";
      auto messages = service_.HandleJson(std::nullopt, body);
      return JsonResponse(req, http::status::ok, MessagesToJson(messages));
    }
    if (segments.size() != 3) {
      return JsonResponse(req, http::status::not_found,
                          ErrorBody(ErrorCode::kInvalidMessage, "no such endpoint"));
    }
    const std::string& id = segments[1];
    const std::string& action = segments[2];
    if (post && action == "message") {
      auto messages = service_.HandleJson(id, body);
      return JsonResponse(req, StatusFor(messages), MessagesToJson(messages));
    }
    if (get && action == "state") {
      auto state = service_.GetState(id);
      if (!state.ok()) {
        return JsonResponse(req, http::status::not_found,
                            ErrorBody(ErrorCode::kUnknownSession, Message(state.status())));
      }
      return JsonResponse(req, http::status::ok, json(*state));
    }
    if (get && action == "log") {
      auto events = service_.LoadSessionLog(id);
      if (!events.ok()) {
        return JsonResponse(req, http::status::not_found,
                            ErrorBody(GetErrorCode(events.status())
                                          .value_or(ErrorCode::kInternal),
                                      Message(events.status())));
      }
      json out = json::array();
      for (const auto& e : *events) out.push_back(EventToJson(e));
      return JsonResponse(req, http::status::ok, out);
    }
    return JsonResponse(req, http::status::not_found,
                        ErrorBody(ErrorCode::kInvalidMessage, "no such endpoint"));
  }

  void ServeWebSocket(tcp::socket socket, Request req) {
    const auto segments = PathSegments(req.target());
    if (segments.empty() || segments[0] != "ws" || segments.size() > 2) {
      beast::error_code ec;
      Response res = JsonResponse(req, http::status::not_found,
                                  ErrorBody(ErrorCode::kInvalidMessage,
                                            "WebSocket endpoint is /ws"));
      http::write(socket, res, ec);
      return;
    }
    std::optional<std::string> bound;
    if (segments.size() == 2) bound = segments[1];

    websocket::stream<tcp::socket> ws(std::move(socket));
    beast::error_code ec;
    ws.accept(req, ec);
    if (ec) return;
    ws.text(true);

    for (;;) {
      beast::flat_buffer buffer;
      ws.read(buffer, ec);
      if (ec) break;
      const std::string text = beast::buffers_to_string(buffer.data());
      json message = json::parse(text, nullptr, /*allow_exceptions=*/false);
      std::vector<ServerMessage> replies;
      if (message.is_discarded()) {
        replies.push_back(server_msg::Error(bound.value_or(""),
                                            ErrorCode::kInvalidMessage,
                                            "frame is not valid JSON"));
      } else {
        std::optional<std::string> target = bound;
        if (message.is_object() && message.contains("session_id") &&
            message["session_id"].is_string()) {
          target = message["session_id"].get<std::string>();
        }
        replies = service_.HandleJson(target, message);
      }
      for (const auto& reply : replies) {
        if (reply.type == "session.created") bound = reply.session_id;
        ws.write(asio::buffer(reply.ToJson().dump()), ec);
        if (ec) return;
      }
    }
  }

  SessionService& service_;
  asio::io_context io_;
  tcp::acceptor acceptor_;
};

Server::Server(SessionService& service)
    : service_(service), impl_(std::make_unique<Impl>(service)) {}

Server::~Server() { Stop(); }

absl::Status Server::Start(const std::string& address) {
  std::string host;
  uint16_t port = 0;
  if (auto s = ParseListenAddress(address, &host, &port); !s.ok()) return s;
  beast::error_code ec;
  const auto ip = asio::ip::make_address(host, ec);
  if (ec) return absl::InvalidArgumentError(absl::StrCat("bad host '", host, "'"));
  const tcp::endpoint endpoint(ip, port);
  auto& acceptor = impl_->acceptor();
  acceptor.open(endpoint.protocol(), ec);
  if (!ec) acceptor.set_option(asio::socket_base::reuse_address(true), ec);
  if (!ec) acceptor.bind(endpoint, ec);
  if (!ec) acceptor.listen(asio::socket_base::max_listen_connections, ec);
  if (ec) {
    return absl::UnavailableError(absl::StrCat("cannot listen on ", address, ": ",
                                               ec.message()));
  }
  port_ = acceptor.local_endpoint().port();
  accept_thread_ = std::thread([this] { AcceptLoop(); });
  return absl::OkStatus();
}

void Server::AcceptLoop() {
  auto& acceptor = impl_->acceptor();
  while (!stopping_) {
    beast::error_code ec;
    tcp::socket socket(impl_->io());
    acceptor.accept(socket, ec);
    if (ec) {
      if (stopping_) break;
      continue;
    }
    ReapFinished();
    auto conn = std::make_unique<Connection>();
    conn->fd = socket.native_handle();
    Connection* raw = conn.get();
    {
      std::lock_guard lock(connections_mu_);
      if (stopping_) break;
      connections_.push_back(std::move(conn));
    }
    raw->thread = std::thread([this, raw, s = std::move(socket)]() mutable {
      impl_->Serve(std::move(s));
      raw->done = true;
    });
  }
}

void Server::ReapFinished() {
  std::list<std::unique_ptr<Connection>> finished;
  {
    std::lock_guard lock(connections_mu_);
    for (auto it = connections_.begin(); it != connections_.end();) {
      if ((*it)->done && (*it)->thread.joinable()) {
        finished.push_back(std::move(*it));
        it = connections_.erase(it);
      } else {
        ++it;
      }
    }
  }
  for (auto& c : finished) c->thread.join();
}

void Server::Stop() {
  if (!accept_thread_.joinable()) return;
  stopping_ = true;
  // shutdown() wakes a thread blocked in accept() or read().
  ::shutdown(impl_->acceptor().native_handle(), SHUT_RDWR);
  accept_thread_.join();
  beast::error_code ec;
  impl_->acceptor().close(ec);

  std::list<std::unique_ptr<Connection>> connections;
  {
    std::lock_guard lock(connections_mu_);
    connections.swap(connections_);
  }
  for (auto& c : connections) {
    if (!c->done) ::shutdown(c->fd, SHUT_RDWR);
  }
  for (auto& c : connections) {
    if (c->thread.joinable()) c->thread.join();
  }
}

}  // namespace cocreate
