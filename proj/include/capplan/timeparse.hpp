#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace capplan {

// All timestamps are UTC minutes since the Unix epoch. Minute resolution is
// the native grain of the metric samples; anything finer is floored.
using minute_t = std::int64_t;

constexpr minute_t kMinutesPerDay = 1440;
constexpr minute_t kMinutesPerWeek = 7 * kMinutesPerDay;

// Accepted formats:
//   M/D/YY H:MM   and M/D/YYYY H:MM   (two-digit years 69..99 -> 19xx, else 20xx)
//   YYYY-MM-DD HH:MM[:SS]             (also with 'T' separator, optional 'Z')
// Returns nullopt for anything else, including impossible calendar dates.
std::optional<minute_t> parse_timestamp(std::string_view text);

// Date-only variant: "YYYY-MM-DD" or "M/D/YY[YY]"; midnight of that day.
std::optional<minute_t> parse_date(std::string_view text);

// "YYYY-MM-DD HH:MM"
std::string format_timestamp(minute_t m);

minute_t make_utc_minutes(int year, int month, int day, int hour = 0, int minute = 0);

// Midnight of the UTC day containing m.
minute_t midnight_of(minute_t m);

}  // namespace capplan
