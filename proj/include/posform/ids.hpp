// Copyright 2026 The posform Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <limits>

namespace posform {

template <class Tag>
struct Id {
  static constexpr std::size_t invalid = std::numeric_limits<std::size_t>::max();

  std::size_t value = invalid;

  constexpr bool valid() const noexcept { return value != invalid; }
  friend constexpr auto operator<=>(Id, Id) = default;
};

using SpaceId = Id<struct SpaceTag>;
using AtomId = Id<struct AtomTag>;
using RegionId = Id<struct RegionTag>;

}  // namespace posform

template <class Tag>
struct std::hash<posform::Id<Tag>> {
  std::size_t operator()(posform::Id<Tag> id) const noexcept {
    return std::hash<std::size_t>{}(id.value);
  }
};
