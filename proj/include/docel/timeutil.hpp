#pragma once

#include <cstdint>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace docel {

// An instant in UTC with microsecond resolution.
//
// Parsing accepts ISO-8601 date-times: "YYYY-MM-DD" followed by 'T' or a
// space, "HH:MM" with optional ":SS" and optional fractional seconds (up to
// 9 digits, truncated to microseconds), and an optional zone designator
// ('Z', "+HH:MM", "-HH:MM" or "+HHMM"). Zoned inputs are normalized to UTC;
// inputs without a zone are taken as UTC.
struct Timestamp {
  std::int64_t micros = 0;  // since 1970-01-01T00:00:00Z

  auto operator<=>(const Timestamp&) const = default;
};

std::optional<Timestamp> parse_timestamp(std::string_view text);

// Canonical rendering: "YYYY-MM-DDTHH:MM:SSZ", with a fractional part
// (trailing zeros trimmed) only when the instant has sub-second precision.
std::string format_timestamp(Timestamp ts);

}  // namespace docel
