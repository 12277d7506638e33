// Copyright medselect contributors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.

#include "medselect/timestamp.hpp"

#include <chrono>
#include <cstdio>

#include "medselect/error.hpp"

namespace medselect {
namespace {

// Howard Hinnant's civil/serial day conversions.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y += m <= 2;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

[[noreturn]] void bad(std::string_view text) {
  raise(Errc::validation_failure, "invalid RFC 3339 timestamp", std::string(text));
}

}  // namespace

Timestamp Timestamp::parse(std::string_view text) {
  // YYYY-MM-DD[Tt ]HH:MM:SS[.frac][Z|±HH:MM]
  std::string s(text);
  int year, mon, day, hour, min, sec;
  int consumed = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2d%n", &year, &mon, &day, &consumed) != 3 || consumed != 10)
    bad(text);
  if (s.size() < 20 || (s[10] != 'T' && s[10] != 't' && s[10] != ' ')) bad(text);
  if (std::sscanf(s.c_str() + 11, "%2d:%2d:%2d%n", &hour, &min, &sec, &consumed) != 3 ||
      consumed != 8)
    bad(text);
  std::size_t pos = 19;

  std::int64_t ms = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    int digits = 0;
    std::int64_t frac = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      if (digits < 3) frac = frac * 10 + (s[pos] - '0');
      ++digits;
      ++pos;
    }
    if (digits == 0) bad(text);
    while (digits < 3 && digits > 0) {
      frac *= 10;
      ++digits;
    }
    ms = frac;
  }

  std::int64_t offset_min = 0;
  if (pos >= s.size()) bad(text);
  if (s[pos] == 'Z' || s[pos] == 'z') {
    ++pos;
  } else if (s[pos] == '+' || s[pos] == '-') {
    int oh, om;
    if (std::sscanf(s.c_str() + pos + 1, "%2d:%2d%n", &oh, &om, &consumed) != 2 || consumed != 5)
      bad(text);
    offset_min = oh * 60 + om;
    if (s[pos] == '-') offset_min = -offset_min;
    pos += 6;
  } else {
    bad(text);
  }
  if (pos != s.size()) bad(text);

  if (mon < 1 || mon > 12 || day < 1 || day > 31 || hour > 23 || min > 59 || sec > 60) bad(text);
  if (sec == 60) sec = 59;  // leap second: clamp

  const std::int64_t serial = days_from_civil(year, static_cast<unsigned>(mon),
                                              static_cast<unsigned>(day));
  // Reject dates that do not exist on the civil calendar (e.g. Feb 30).
  std::int64_t ry;
  unsigned rm, rd;
  civil_from_days(serial, ry, rm, rd);
  if (ry != year || rm != static_cast<unsigned>(mon) || rd != static_cast<unsigned>(day))
    bad(text);

  std::int64_t total =
      ((serial * 24 + hour) * 60 + min - offset_min) * 60 + sec;
  return Timestamp{total * 1000 + ms};
}

Timestamp Timestamp::now() {
  using namespace std::chrono;
  return Timestamp{duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count()};
}

std::string Timestamp::to_string() const {
  const std::int64_t days = floor_div(epoch_ms, 86'400'000);
  std::int64_t rem = epoch_ms - days * 86'400'000;
  const int ms = static_cast<int>(rem % 1000);
  rem /= 1000;
  const int sec = static_cast<int>(rem % 60);
  rem /= 60;
  const int min = static_cast<int>(rem % 60);
  const int hour = static_cast<int>(rem / 60);

  std::int64_t year;
  unsigned mon, day;
  civil_from_days(days, year, mon, day);

  char buf[40];
  if (ms == 0) {
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02dZ",
                  static_cast<long long>(year), mon, day, hour, min, sec);
  } else {
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02d.%03dZ",
                  static_cast<long long>(year), mon, day, hour, min, sec, ms);
  }
  return buf;
}

}  // namespace medselect
