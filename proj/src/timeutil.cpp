#include "docel/timeutil.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

namespace docel {
namespace {

bool read_digits(std::string_view& s, int count, int& out) {
  if (s.size() < static_cast<size_t>(count)) return false;
  int v = 0;
  for (int i = 0; i < count; ++i) {
    char c = s[static_cast<size_t>(i)];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  s.remove_prefix(static_cast<size_t>(count));
  out = v;
  return true;
}

bool eat(std::string_view& s, char c) {
  if (s.empty() || s.front() != c) return false;
  s.remove_prefix(1);
  return true;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view s) {
  int year = 0, month = 0, day = 0;
  if (!read_digits(s, 4, year) || !eat(s, '-') || !read_digits(s, 2, month) ||
      !eat(s, '-') || !read_digits(s, 2, day)) {
    return std::nullopt;
  }
  if (s.empty() || (s.front() != 'T' && s.front() != ' ')) return std::nullopt;
  s.remove_prefix(1);

  int hour = 0, minute = 0, second = 0;
  if (!read_digits(s, 2, hour) || !eat(s, ':') || !read_digits(s, 2, minute)) {
    return std::nullopt;
  }
  std::int64_t frac_micros = 0;
  if (!s.empty() && s.front() == ':') {
    s.remove_prefix(1);
    if (!read_digits(s, 2, second)) return std::nullopt;
    if (!s.empty() && s.front() == '.') {
      s.remove_prefix(1);
      if (s.empty() || s.front() < '0' || s.front() > '9') return std::nullopt;
      std::int64_t scale = 100000;  // first fraction digit is 1e-1 seconds
      int digits = 0;
      while (!s.empty() && s.front() >= '0' && s.front() <= '9') {
        if (digits < 9) {
          if (scale > 0) frac_micros += (s.front() - '0') * scale;
          scale /= 10;
        }
        ++digits;
        s.remove_prefix(1);
      }
      if (digits > 9) return std::nullopt;
    }
  }

  std::int64_t offset_seconds = 0;
  if (!s.empty()) {
    char z = s.front();
    if (z == 'Z') {
      s.remove_prefix(1);
    } else if (z == '+' || z == '-') {
      s.remove_prefix(1);
      int oh = 0, om = 0;
      if (!read_digits(s, 2, oh)) return std::nullopt;
      eat(s, ':');
      if (!read_digits(s, 2, om)) return std::nullopt;
      if (oh > 23 || om > 59) return std::nullopt;
      offset_seconds = static_cast<std::int64_t>(oh) * 3600 + om * 60;
      if (z == '-') offset_seconds = -offset_seconds;
    } else {
      return std::nullopt;
    }
  }
  if (!s.empty()) return std::nullopt;

  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                     std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
  if (second == 60) second = 59;  // leap second: clamp

  sys_days sd{ymd};
  std::int64_t total =
      static_cast<std::int64_t>(sd.time_since_epoch().count()) * 86400 +
      static_cast<std::int64_t>(hour) * 3600 + minute * 60 + second - offset_seconds;
  return Timestamp{total * 1000000 + frac_micros};
}

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  std::int64_t micros = ts.micros;
  std::int64_t frac = micros % 1000000;
  std::int64_t secs = micros / 1000000;
  if (frac < 0) {
    frac += 1000000;
    secs -= 1;
  }
  std::int64_t days = secs / 86400;
  std::int64_t rem = secs % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  sys_days sd{std::chrono::days{days}};
  year_month_day ymd{sd};
  int hour = static_cast<int>(rem / 3600);
  int minute = static_cast<int>((rem / 60) % 60);
  int second = static_cast<int>(rem % 60);

  char buf[48];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), hour, minute, second);
  std::string out = buf;
  if (frac != 0) {
    std::snprintf(buf, sizeof(buf), ".%06d", static_cast<int>(frac));
    std::string f = buf;
    while (f.back() == '0') f.pop_back();
    out += f;
  }
  out += 'Z';
  return out;
}

}  // namespace docel
