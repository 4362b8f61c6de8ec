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

#include "service/event_log.h"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "absl/strings/str_cat.h"
#include "core/errors.h"
#include "core/strings.h"

namespace cocreate {
namespace {

absl::Status SeqViolation(int64_t last, int64_t got) {
  return MakeError(ErrorCode::kInternal,
                   absl::StrCat("event seq ", got, " does not follow ", last));
}

}  // namespace

absl::Status MemoryEventSink::Append(const SessionEvent& event) {
  const int64_t last = events_.empty() ? 0 : events_.back().seq;
  if (event.seq != last + 1) return SeqViolation(last, event.seq);
  events_.push_back(event);
  return absl::OkStatus();
}

absl::StatusOr<std::unique_ptr<JsonlEventLog>> JsonlEventLog::Open(
    const std::filesystem::path& path, int64_t last_seq) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) {
    return MakeError(ErrorCode::kStorage,
                     absl::StrCat("cannot open ", path.string(), ": ",
                                  std::strerror(errno)));
  }
  return std::unique_ptr<JsonlEventLog>(new JsonlEventLog(fd, path, last_seq));
}

JsonlEventLog::~JsonlEventLog() { ::close(fd_); }

absl::Status JsonlEventLog::Append(const SessionEvent& event) {
  if (event.seq != last_seq_ + 1) return SeqViolation(last_seq_, event.seq);
  const std::string line = EventToJsonLine(event) + "\n";
  // O_APPEND plus a single write per line keeps lines whole.
  size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      return MakeError(ErrorCode::kStorage,
                       absl::StrCat("write to ", path_.string(), " failed: ",
                                    std::strerror(errno)));
    }
    written += static_cast<size_t>(n);
  }
  if (::fsync(fd_) != 0) {
    return MakeError(ErrorCode::kStorage,
                     absl::StrCat("fsync of ", path_.string(), " failed: ",
                                  std::strerror(errno)));
  }
  last_seq_ = event.seq;
  return absl::OkStatus();
}

std::filesystem::path SessionLogPath(const std::filesystem::path& log_dir,
                                     std::string_view session_id) {
  return log_dir / absl::StrCat(Av(session_id), ".jsonl");
}

absl::StatusOr<std::vector<SessionEvent>> LoadEventLog(
    const std::filesystem::path& path, bool repair) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorCode::kUnknownSession,
                     absl::StrCat("no session log at ", path.string()));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  std::vector<SessionEvent> events;
  size_t pos = 0;
  size_t valid_bytes = 0;
  while (pos < content.size()) {
    const size_t newline = content.find('\n', pos);
    if (newline == std::string::npos) {
      // Torn trailing write: the event was never acknowledged.
      break;
    }
    const std::string_view line(content.data() + pos, newline - pos);
    pos = newline + 1;
    if (line.empty()) {
      valid_bytes = pos;
      continue;
    }
    auto event = ParseEventLine(line);
    if (!event.ok()) {
      return MakeError(GetErrorCode(event.status()).value_or(ErrorCode::kMalformedLog),
                       absl::StrCat(path.string(), ": ", event.status().message()));
    }
    events.push_back(*std::move(event));
    valid_bytes = pos;
  }
  if (repair && valid_bytes < content.size()) {
    std::error_code ec;
    std::filesystem::resize_file(path, valid_bytes, ec);
    if (ec) {
      return MakeError(ErrorCode::kStorage,
                       absl::StrCat("cannot truncate ", path.string(), ": ",
                                    ec.message()));
    }
  }
  return events;
}

}  // namespace cocreate
