#include "latsel/time_util.hpp"

#include <charconv>
#include <cstdio>

#include "latsel/error.hpp"

namespace latsel {

// Howard Hinnant's public-domain civil date algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);             // [0, 399]
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;   // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;            // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, unsigned& month, unsigned& day) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = doy - (153 * mp + 2) / 5 + 1;
  month = mp + (mp < 10 ? 3 : -9);
  year = static_cast<int>(y + (month <= 2));
}

Timestamp utc_day_start(Timestamp ts) {
  std::int64_t d = ts / kSecondsPerDay;
  if (ts % kSecondsPerDay < 0) --d;
  return d * kSecondsPerDay;
}

namespace {

bool parse_int(std::string_view s, std::int64_t& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool all_digits_or_sign(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

int to_int(std::string_view s, const char* what) {
  std::int64_t v;
  if (!parse_int(s, v)) throw input_error(std::string("invalid ") + what + " in timestamp");
  return static_cast<int>(v);
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  // Trim surrounding whitespace.
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty()) throw input_error("empty timestamp");

  if (all_digits_or_sign(text)) {
    std::int64_t v;
    if (!parse_int(text, v)) throw input_error("invalid epoch timestamp");
    return v;
  }

  // YYYY-MM-DD[T ]HH:MM:SS[.fff][Z|+HH:MM|-HH:MM]
  if (text.size() < 19 || text[4] != '-' || text[7] != '-' ||
      (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || text[16] != ':') {
    throw input_error("unrecognized timestamp format: " + std::string(text));
  }
  const int year = to_int(text.substr(0, 4), "year");
  const int month = to_int(text.substr(5, 2), "month");
  const int day = to_int(text.substr(8, 2), "day");
  const int hour = to_int(text.substr(11, 2), "hour");
  const int minute = to_int(text.substr(14, 2), "minute");
  const int second = to_int(text.substr(17, 2), "second");
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60)
    throw input_error("timestamp field out of range: " + std::string(text));

  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;  // fractional seconds: truncated
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
  }

  std::int64_t offset = 0;
  if (pos < text.size()) {
    const char c = text[pos];
    if (c == 'Z' && pos + 1 == text.size()) {
      // UTC, nothing to do
    } else if ((c == '+' || c == '-') && pos + 6 == text.size() && text[pos + 3] == ':') {
      const int oh = to_int(text.substr(pos + 1, 2), "offset hour");
      const int om = to_int(text.substr(pos + 4, 2), "offset minute");
      offset = (c == '+' ? 1 : -1) * (oh * 3600 + om * 60);
    } else {
      throw input_error("unrecognized timestamp suffix: " + std::string(text));
    }
  }

  const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                            static_cast<unsigned>(day));
  return days * kSecondsPerDay + hour * 3600 + minute * 60 + second - offset;
}

std::string format_timestamp(Timestamp ts) {
  std::int64_t days = ts / kSecondsPerDay;
  std::int64_t rem = ts % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  int year;
  unsigned month, day;
  civil_from_days(days, year, month, day);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", year, month, day,
                static_cast<long long>(rem / 3600), static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

}  // namespace latsel
