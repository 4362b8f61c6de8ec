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

#ifndef COCREATE_SERVICE_EVENT_LOG_H_
#define COCREATE_SERVICE_EVENT_LOG_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "core/events.h"

namespace cocreate {

// Durable destination for one session's events. Append must only return
// once the event is persisted; it rejects any seq other than last + 1.
class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual absl::Status Append(const SessionEvent& event) = 0;
};

class MemoryEventSink final : public EventSink {
 public:
  absl::Status Append(const SessionEvent& event) override;
  const std::vector<SessionEvent>& events() const { return events_; }

 private:
  std::vector<SessionEvent> events_;
};

// `{log_dir}/{session_id}.jsonl`, one event per line, fsync'd per append.
class JsonlEventLog final : public EventSink {
 public:
  // Opens for appending. `last_seq` is the seq of the last event already in
  // the file (0 for a new log).
  static absl::StatusOr<std::unique_ptr<JsonlEventLog>> Open(
      const std::filesystem::path& path, int64_t last_seq);
  ~JsonlEventLog() override;

  JsonlEventLog(const JsonlEventLog&) = delete;
  JsonlEventLog& operator=(const JsonlEventLog&) = delete;

  absl::Status Append(const SessionEvent& event) override;

 private:
  JsonlEventLog(int fd, std::filesystem::path path, int64_t last_seq)
      : fd_(fd), path_(std::move(path)), last_seq_(last_seq) {}

  int fd_;
  std::filesystem::path path_;
  int64_t last_seq_;
};

std::filesystem::path SessionLogPath(const std::filesystem::path& log_dir,
                                     std::string_view session_id);

// Reads a session log in file order. A final line without its newline is a
// torn write from a crash and is dropped (and truncated away when
// `repair` is set); any other bad line is kMalformedLog. A missing file is
// kUnknownSession.
absl::StatusOr<std::vector<SessionEvent>> LoadEventLog(
    const std::filesystem::path& path, bool repair = false);

}  // namespace cocreate

#endif  // COCREATE_SERVICE_EVENT_LOG_H_
