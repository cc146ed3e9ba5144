#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace repoprint {

/// UTC seconds since the Unix epoch.
using UnixSeconds = std::int64_t;

inline constexpr UnixSeconds kSecondsPerDay = 86400;

/// Parses "YYYY-MM-DDTHH:MM:SSZ", "YYYY-MM-DD HH:MM:SS" or a bare
/// "YYYY-MM-DD" (midnight). A trailing "Z" or "+00:00" is accepted.
std::optional<UnixSeconds> parse_utc(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_utc(UnixSeconds t);

/// Half-open collection window [start, end).
struct TimeWindow {
  UnixSeconds start = 0;
  UnixSeconds end = 0;

  bool contains(UnixSeconds t) const noexcept { return t >= start && t < end; }
};

/// Parses "YYYY-MM-DD..YYYY-MM-DD"; both days are inclusive, so the window
/// end is midnight after the second date. Throws Error(InvalidConfig).
TimeWindow parse_window(std::string_view text);

/// January 1, 2017 through June 30, 2020 inclusive.
TimeWindow default_collection_window();

}  // namespace repoprint
