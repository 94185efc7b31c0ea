#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "capplan/timeparse.hpp"

using namespace capplan;

TEST_CASE("spreadsheet timestamps parse with century expansion") {
    auto m = parse_timestamp("9/29/99 0:00");
    REQUIRE(m.has_value());
    CHECK(*m == make_utc_minutes(1999, 9, 29, 0, 0));

    auto m2 = parse_timestamp("1/2/03 14:05");
    REQUIRE(m2.has_value());
    CHECK(*m2 == make_utc_minutes(2003, 1, 2, 14, 5));

    auto m3 = parse_timestamp("9/29/1999 0:16");
    REQUIRE(m3.has_value());
    CHECK(*m3 == make_utc_minutes(1999, 9, 29, 0, 16));
}

TEST_CASE("iso timestamps parse with both separators") {
    CHECK(parse_timestamp("1999-09-29 00:16") == make_utc_minutes(1999, 9, 29, 0, 16));
    CHECK(parse_timestamp("1999-09-29T00:16") == make_utc_minutes(1999, 9, 29, 0, 16));
    CHECK(parse_timestamp("1999-09-29T00:16:00Z") == make_utc_minutes(1999, 9, 29, 0, 16));
    CHECK(parse_timestamp("2000-01-01 02:00") == make_utc_minutes(2000, 1, 1, 2, 0));
}

TEST_CASE("seconds are floored to the minute") {
    CHECK(parse_timestamp("1999-09-29 00:16:45") == make_utc_minutes(1999, 9, 29, 0, 16));
}

TEST_CASE("garbage and impossible dates are rejected") {
    CHECK_FALSE(parse_timestamp("not a time").has_value());
    CHECK_FALSE(parse_timestamp("1999-02-30 00:00").has_value());
    CHECK_FALSE(parse_timestamp("1999-09-29 25:00").has_value());
    CHECK_FALSE(parse_timestamp("13/45/99 0:00").has_value());
    CHECK_FALSE(parse_timestamp("1999-09-29").has_value());  // date-only needs parse_date
    CHECK_FALSE(parse_timestamp("").has_value());
}

TEST_CASE("format and parse round-trip") {
    const minute_t m = make_utc_minutes(1999, 12, 31, 23, 45);
    CHECK(format_timestamp(m) == "1999-12-31 23:45");
    CHECK(parse_timestamp(format_timestamp(m)) == m);
}

TEST_CASE("midnight_of floors to the containing day") {
    const minute_t m = make_utc_minutes(1999, 9, 29, 13, 37);
    CHECK(midnight_of(m) == make_utc_minutes(1999, 9, 29));
    CHECK(midnight_of(make_utc_minutes(1999, 9, 29)) == make_utc_minutes(1999, 9, 29));
}

TEST_CASE("date-only parsing") {
    CHECK(parse_date("1999-09-29") == make_utc_minutes(1999, 9, 29));
    CHECK(parse_date("9/29/99") == make_utc_minutes(1999, 9, 29));
    CHECK_FALSE(parse_date("1999-9").has_value());
}
