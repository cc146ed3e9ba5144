#include "repoprint/core/time.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "repoprint/core/error.hpp"

namespace repoprint {
namespace {

bool read_int(std::string_view text, std::size_t pos, std::size_t len,
              int& out) {
  if (pos + len > text.size()) return false;
  const char* first = text.data() + pos;
  for (std::size_t i = 0; i < len; ++i) {
    if (first[i] < '0' || first[i] > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(first, first + len, out);
  return ec == std::errc{} && ptr == first + len;
}

}  // namespace

std::optional<UnixSeconds> parse_utc(std::string_view text) {
  using namespace std::chrono;
  int y = 0, mo = 0, d = 0, hh = 0, mm = 0, ss = 0;
  if (!read_int(text, 0, 4, y) || text.size() < 10 || text[4] != '-' ||
      !read_int(text, 5, 2, mo) || text[7] != '-' || !read_int(text, 8, 2, d)) {
    return std::nullopt;
  }
  std::string_view rest = text.substr(10);
  if (!rest.empty()) {
    if (rest.size() < 9 || (rest[0] != 'T' && rest[0] != ' ') ||
        !read_int(rest, 1, 2, hh) || rest[3] != ':' ||
        !read_int(rest, 4, 2, mm) || rest[6] != ':' ||
        !read_int(rest, 7, 2, ss)) {
      return std::nullopt;
    }
    std::string_view zone = rest.substr(9);
    if (!zone.empty() && zone != "Z" && zone != "+00:00") return std::nullopt;
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  const auto days = sys_days{ymd}.time_since_epoch().count();
  return static_cast<UnixSeconds>(days) * kSecondsPerDay + hh * 3600 +
         mm * 60 + ss;
}

std::string format_utc(UnixSeconds t) {
  using namespace std::chrono;
  auto days = t / kSecondsPerDay;
  auto secs = t % kSecondsPerDay;
  if (secs < 0) {
    secs += kSecondsPerDay;
    --days;
  }
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(secs / 3600), static_cast<int>(secs / 60 % 60),
                static_cast<int>(secs % 60));
  return buf;
}

TimeWindow parse_window(std::string_view text) {
  const auto sep = text.find("..");
  if (sep == std::string_view::npos) {
    fail(Errc::InvalidConfig,
         "window must look like YYYY-MM-DD..YYYY-MM-DD, got '" +
             std::string(text) + "'");
  }
  auto start = parse_utc(text.substr(0, sep));
  auto last = parse_utc(text.substr(sep + 2));
  if (!start || !last) {
    fail(Errc::InvalidConfig, "unparseable window '" + std::string(text) + "'");
  }
  TimeWindow w{*start, *last + kSecondsPerDay};
  if (w.start >= w.end) {
    fail(Errc::InvalidConfig, "window start must precede its end");
  }
  return w;
}

TimeWindow default_collection_window() {
  return parse_window("2017-01-01..2020-06-30");
}

}  // namespace repoprint
