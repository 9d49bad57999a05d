#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace latsel {

// All timestamps are UTC seconds since the Unix epoch. Calendar arithmetic
// (day boundaries, ISO formatting) is done with proleptic Gregorian civil
// conversions so results are identical on every platform and time zone.
using Timestamp = std::int64_t;

inline constexpr std::int64_t kSecondsPerDay = 86400;

// Days since epoch for a civil date (Gregorian, proleptic).
std::int64_t days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day);

// Midnight of the UTC calendar day containing ts. Works for negative ts.
Timestamp utc_day_start(Timestamp ts);

// Accepts integer epoch seconds ("1648771200", possibly signed) or ISO-8601
// ("2022-04-01T00:00:00Z", 'T' or ' ' separator, optional fractional seconds
// which are truncated, optional "Z" or "+HH:MM"/"-HH:MM" offset).
Timestamp parse_timestamp(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_timestamp(Timestamp ts);

}  // namespace latsel
