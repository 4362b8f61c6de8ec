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

#ifndef COCREATE_CORE_ENUM_NAMES_H_
#define COCREATE_CORE_ENUM_NAMES_H_

#include <optional>
#include <string_view>

namespace cocreate {

// Specialize with `static constexpr std::pair<E, std::string_view> kTable[]`.
template <typename E>
struct EnumNames;

template <typename E>
std::string_view EnumToString(E value) {
  for (const auto& [v, name] : EnumNames<E>::kTable) {
    if (v == value) return name;
  }
  return "unknown";
}

template <typename E>
std::optional<E> EnumFromString(std::string_view name) {
  for (const auto& [v, n] : EnumNames<E>::kTable) {
    if (n == name) return v;
  }
  return std::nullopt;
}

}  // namespace cocreate

#endif  // COCREATE_CORE_ENUM_NAMES_H_
