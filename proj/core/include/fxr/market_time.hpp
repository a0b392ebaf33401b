#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace fxr {

// Provider tick files are stamped in fixed EST (UTC-5) year-round. The
// market-time window, by contrast, is defined in New York local time and
// follows DST. Keep the two notions separate: parsing uses a fixed offset,
// window arithmetic uses ny_utc_offset_minutes().
inline constexpr int kEstStampOffsetMinutes = -300;

struct CivilDateTime {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
  int hour = 0;
  int minute = 0;
  int second = 0;
  int millisecond = 0;
};

// Days since 1970-01-01 in the proleptic Gregorian calendar.
int64_t days_from_civil(int year, int month, int day);
void civil_from_days(int64_t days, int& year, int& month, int& day);

// 0 = Sunday .. 6 = Saturday.
int weekday_from_days(int64_t days);

bool is_leap_year(int year);
int days_in_month(int year, int month);

int64_t civil_to_epoch_ms(const CivilDateTime& c, int utc_offset_minutes);
CivilDateTime civil_from_epoch_ms(int64_t epoch_ms, int utc_offset_minutes);

// ISO-8601 year/week of a civil date.
void iso_year_week(int year, int month, int day, int& iso_year, int& iso_week);

// US Eastern UTC offset (minutes) at a UTC instant: -240 during DST, -300
// otherwise. Statutory rule: since 2007 DST runs from the second Sunday of
// March 02:00 to the first Sunday of November 02:00; 1987-2006 used first
// Sunday of April to last Sunday of October.
int ny_utc_offset_minutes(int64_t epoch_ms);

// One trading week of market time: Sunday 19:10:00.000 to Friday
// 16:50:00.000 New York local time, start inclusive, end exclusive. DST
// transitions happen Sunday 02:00, before the window opens, so a single
// UTC offset holds throughout any one window and every window spans
// exactly 423,600 seconds.
struct MarketWeek {
  std::string week_id;  // ISO year-week of the Monday inside the window
  int64_t start_ms = 0;
  int64_t end_ms = 0;

  int64_t span_ms() const { return end_ms - start_ms; }
  int64_t slot_count() const { return span_ms() / 1000; }
  bool contains(int64_t ts_ms) const {
    return ts_ms >= start_ms && ts_ms < end_ms;
  }
};

// Window of the market week containing ts_ms, if any. The weekend gap
// (Friday 16:50 to Sunday 19:10 NY time) belongs to no week.
std::optional<MarketWeek> market_week_of(int64_t ts_ms);

// Window opening on the given NY-local Sunday. Throws std::invalid_argument
// if the date is not a Sunday.
MarketWeek market_week_from_sunday(int year, int month, int day);

}  // namespace fxr
