// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace medselect {

/// UTC instant with millisecond precision. Parsed from and rendered as
/// RFC 3339; rendering is always canonical UTC ("2026-08-01T09:00:00Z"),
/// whatever offset the input carried.
struct Timestamp {
  std::int64_t epoch_ms = 0;

  static Timestamp parse(std::string_view text);
  static Timestamp now();

  std::string to_string() const;

  auto operator<=>(const Timestamp&) const = default;
};

}  // namespace medselect
