#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fxr/market_time.hpp"

using namespace fxr;

// Frozen reference values computed independently with the IANA tzdata for
// America/New_York (zoneinfo); the implementation must reproduce them from
// the statutory rule alone.
namespace {

struct DstInstants {
  int year;
  int64_t on_utc_s;   // EST -> EDT
  int64_t off_utc_s;  // EDT -> EST
};

constexpr DstInstants kDst[] = {
    {2008, 1205046000, 1225605600}, {2009, 1236495600, 1257055200},
    {2010, 1268550000, 1289109600}, {2011, 1299999600, 1320559200},
    {2012, 1331449200, 1352008800}, {2013, 1362898800, 1383458400},
    {2014, 1394348400, 1414908000}, {2015, 1425798000, 1446357600},
    {2016, 1457852400, 1478412000}, {2017, 1489302000, 1509861600},
    {2018, 1520751600, 1541311200}, {2019, 1552201200, 1572760800},
    {2020, 1583650800, 1604210400},
};

}  // namespace

TEST_CASE("civil calendar round trip") {
  CHECK(days_from_civil(1970, 1, 1) == 0);
  CHECK(weekday_from_days(0) == 4);  // 1970-01-01 was a Thursday
  CHECK(weekday_from_days(days_from_civil(2019, 1, 6)) == 0);  // Sunday
  CHECK(days_in_month(2020, 2) == 29);
  CHECK(days_in_month(2019, 2) == 28);
  CHECK(days_in_month(2000, 2) == 29);
  CHECK(days_in_month(1900, 2) == 28);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 5000; ++i) {
    const int64_t z = static_cast<int64_t>(rng() % 40000) - 3000;
    int y, m, d;
    civil_from_days(z, y, m, d);
    CHECK(days_from_civil(y, m, d) == z);
    CHECK(m >= 1);
    CHECK(m <= 12);
    CHECK(d >= 1);
    CHECK(d <= days_in_month(y, m));
  }
}

TEST_CASE("epoch conversions with fixed offsets") {
  // "20190102 070005123" stamped UTC-5
  const CivilDateTime c{2019, 1, 2, 7, 0, 5, 123};
  CHECK(civil_to_epoch_ms(c, kEstStampOffsetMinutes) == 1546430405123LL);

  const CivilDateTime back =
      civil_from_epoch_ms(1546430405123LL, kEstStampOffsetMinutes);
  CHECK(back.year == 2019);
  CHECK(back.month == 1);
  CHECK(back.day == 2);
  CHECK(back.hour == 7);
  CHECK(back.minute == 0);
  CHECK(back.second == 5);
  CHECK(back.millisecond == 123);
}

TEST_CASE("US Eastern DST rule matches tzdata at transition instants") {
  for (const DstInstants& d : kDst) {
    CAPTURE(d.year);
    CHECK(ny_utc_offset_minutes((d.on_utc_s - 1) * 1000) == -300);
    CHECK(ny_utc_offset_minutes(d.on_utc_s * 1000) == -240);
    CHECK(ny_utc_offset_minutes((d.off_utc_s - 1) * 1000) == -240);
    CHECK(ny_utc_offset_minutes(d.off_utc_s * 1000) == -300);
  }
}

TEST_CASE("market week windows match tzdata-derived bounds") {
  SUBCASE("winter week across a year boundary") {
    const MarketWeek w = market_week_from_sunday(2018, 12, 30);
    CHECK(w.start_ms == 1546215000000LL);
    CHECK(w.end_ms == 1546638600000LL);
    CHECK(w.week_id == "2019-W01");
  }
  SUBCASE("week opening on the DST-start Sunday") {
    const MarketWeek w = market_week_from_sunday(2019, 3, 10);
    CHECK(w.start_ms == 1552259400000LL);
    CHECK(w.end_ms == 1552683000000LL);
  }
  SUBCASE("midsummer week") {
    const MarketWeek w = market_week_from_sunday(2019, 7, 7);
    CHECK(w.start_ms == 1562541000000LL);
    CHECK(w.end_ms == 1562964600000LL);
  }
  SUBCASE("week opening on the DST-end Sunday") {
    const MarketWeek w = market_week_from_sunday(2019, 11, 3);
    CHECK(w.start_ms == 1572826200000LL);
    CHECK(w.end_ms == 1573249800000LL);
  }
  SUBCASE("older years") {
    CHECK(market_week_from_sunday(2011, 1, 9).start_ms == 1294618200000LL);
    CHECK(market_week_from_sunday(2015, 6, 7).start_ms == 1433718600000LL);
  }
  SUBCASE("not a Sunday") {
    CHECK_THROWS_AS(market_week_from_sunday(2019, 7, 8), std::invalid_argument);
  }
}

TEST_CASE("every market week spans exactly 423600 seconds") {
  // A DST transition happens Sunday 02:00, before the window opens, so one
  // offset holds across any window: 4 full days + Sun 19:10-24:00 +
  // Fri 00:00-16:50 = 423,600 s.
  int64_t sunday = days_from_civil(2008, 1, 6);
  for (; sunday <= days_from_civil(2020, 12, 27); sunday += 7) {
    int y, m, d;
    civil_from_days(sunday, y, m, d);
    const MarketWeek w = market_week_from_sunday(y, m, d);
    CAPTURE(w.week_id);
    CHECK(w.span_ms() == 423'600'000LL);
    CHECK(w.slot_count() == 423'600LL);
  }
}

TEST_CASE("market_week_of window membership") {
  const MarketWeek w = market_week_from_sunday(2019, 7, 7);

  SUBCASE("instants inside the window resolve to it") {
    auto at_start = market_week_of(w.start_ms);
    REQUIRE(at_start.has_value());
    CHECK(at_start->start_ms == w.start_ms);
    auto midweek = market_week_of(w.start_ms + 2 * 86'400'000LL);
    REQUIRE(midweek.has_value());
    CHECK(midweek->week_id == w.week_id);
    auto last_ms = market_week_of(w.end_ms - 1);
    REQUIRE(last_ms.has_value());
    CHECK(last_ms->start_ms == w.start_ms);
  }
  SUBCASE("boundary instants fall outside") {
    CHECK_FALSE(market_week_of(w.start_ms - 1).has_value());  // Sun 19:09:59.999
    CHECK_FALSE(market_week_of(w.end_ms).has_value());        // Fri 16:50:00.000
  }
  SUBCASE("weekend gap belongs to no week") {
    CHECK_FALSE(market_week_of(w.end_ms + 3'600'000).has_value());  // Fri evening
    CHECK_FALSE(market_week_of(w.start_ms - 12 * 3'600'000).has_value());  // Sun morning
    CHECK_FALSE(market_week_of(w.end_ms + 86'400'000).has_value());  // Saturday
  }
  SUBCASE("consecutive weeks do not overlap") {
    const MarketWeek next = market_week_from_sunday(2019, 7, 14);
    CHECK(w.end_ms < next.start_ms);
  }
}

TEST_CASE("iso week ids") {
  int y, wk;
  iso_year_week(2019, 1, 1, y, wk);
  CHECK(y == 2019);
  CHECK(wk == 1);
  iso_year_week(2018, 12, 31, y, wk);  // Monday of 2019-W01
  CHECK(y == 2019);
  CHECK(wk == 1);
  iso_year_week(2016, 1, 3, y, wk);  // Sunday of 2015-W53
  CHECK(y == 2015);
  CHECK(wk == 53);
  iso_year_week(2015, 12, 28, y, wk);
  CHECK(y == 2015);
  CHECK(wk == 53);
}
