#include "capplan/timeparse.hpp"

#include <chrono>
#include <cstdio>

namespace capplan {

namespace {

bool valid_ymd(int year, int month, int day) {
    using namespace std::chrono;
    year_month_day ymd{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                       std::chrono::day{unsigned(day)}};
    return ymd.ok();
}

int expand_two_digit_year(int yy) {
    return yy >= 69 ? 1900 + yy : 2000 + yy;
}

}  // namespace

minute_t make_utc_minutes(int year, int month, int day, int hour, int minute) {
    using namespace std::chrono;
    sys_days sd{year_month_day{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                               std::chrono::day{unsigned(day)}}};
    return duration_cast<minutes>(sd.time_since_epoch()).count() + hour * 60 + minute;
}

std::optional<minute_t> parse_timestamp(std::string_view text) {
    std::string s(text);
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    char trail = '\0';

    // ISO 8601, space or 'T' separator, optional seconds, optional trailing Z.
    int n = std::sscanf(s.c_str(), "%d-%d-%d%*1[ T]%d:%d:%d%c", &y, &mo, &d, &h, &mi, &sec, &trail);
    if (n >= 5) {
        if (n == 7 && trail != 'Z') return std::nullopt;
        if (!valid_ymd(y, mo, d) || h < 0 || h > 23 || mi < 0 || mi > 59 || sec < 0 || sec > 59)
            return std::nullopt;
        return make_utc_minutes(y, mo, d, h, mi);
    }

    // Spreadsheet style M/D/YY H:MM (also four-digit years).
    n = std::sscanf(s.c_str(), "%d/%d/%d %d:%d%c", &mo, &d, &y, &h, &mi, &trail);
    if (n == 5) {
        if (y < 100) y = expand_two_digit_year(y);
        if (!valid_ymd(y, mo, d) || h < 0 || h > 23 || mi < 0 || mi > 59)
            return std::nullopt;
        return make_utc_minutes(y, mo, d, h, mi);
    }

    return std::nullopt;
}

std::optional<minute_t> parse_date(std::string_view text) {
    std::string s(text);
    int y = 0, mo = 0, d = 0;
    char trail = '\0';
    if (std::sscanf(s.c_str(), "%d-%d-%d%c", &y, &mo, &d, &trail) == 3) {
        if (!valid_ymd(y, mo, d)) return std::nullopt;
        return make_utc_minutes(y, mo, d);
    }
    if (std::sscanf(s.c_str(), "%d/%d/%d%c", &mo, &d, &y, &trail) == 3) {
        if (y < 100) y = expand_two_digit_year(y);
        if (!valid_ymd(y, mo, d)) return std::nullopt;
        return make_utc_minutes(y, mo, d);
    }
    return std::nullopt;
}

std::string format_timestamp(minute_t m) {
    using namespace std::chrono;
    minute_t day = m / kMinutesPerDay;
    minute_t rem = m - day * kMinutesPerDay;
    if (rem < 0) {  // keep floor semantics for pre-epoch times
        day -= 1;
        rem += kMinutesPerDay;
    }
    year_month_day ymd{sys_days{days{day}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02lld:%02lld", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()),
                  static_cast<long long>(rem / 60), static_cast<long long>(rem % 60));
    return buf;
}

minute_t midnight_of(minute_t m) {
    minute_t day = m / kMinutesPerDay;
    if (m < 0 && m % kMinutesPerDay != 0) day -= 1;
    return day * kMinutesPerDay;
}

}  // namespace capplan
