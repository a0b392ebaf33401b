#include "fxr/market_time.hpp"

#include <cstdio>
#include <stdexcept>

namespace fxr {

namespace {

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t positive_mod(int64_t a, int64_t b) { return a - floor_div(a, b) * b; }

// Day-of-month of the n-th (1-based) given weekday in a month.
int nth_weekday_of_month(int year, int month, int weekday, int n) {
  const int64_t first = days_from_civil(year, month, 1);
  const int first_wd = weekday_from_days(first);
  int day = 1 + positive_mod(weekday - first_wd, 7);
  day += 7 * (n - 1);
  return day;
}

int last_weekday_of_month(int year, int month, int weekday) {
  const int dim = days_in_month(year, month);
  const int64_t last = days_from_civil(year, month, dim);
  const int last_wd = weekday_from_days(last);
  return dim - static_cast<int>(positive_mod(last_wd - weekday, 7));
}

constexpr int64_t kMsPerDay = 86'400'000;

}  // namespace

// Howard Hinnant's chrono-compatible civil calendar algorithms.
int64_t days_from_civil(int year, int month, int day) {
  year -= month <= 2;
  const int64_t era = (year >= 0 ? year : year - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(year - era * 400);
  const unsigned doy =
      (153u * static_cast<unsigned>(month + (month > 2 ? -3 : 9)) + 2u) / 5u +
      static_cast<unsigned>(day) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t days, int& year, int& month, int& day) {
  days += 719468;
  const int64_t era = floor_div(days, 146097);
  const unsigned doe = static_cast<unsigned>(days - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t y = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  month = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
  year = static_cast<int>(y + (month <= 2));
}

int weekday_from_days(int64_t days) {
  return static_cast<int>(positive_mod(days + 4, 7));
}

bool is_leap_year(int year) {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && is_leap_year(year)) return 29;
  return kDays[month - 1];
}

int64_t civil_to_epoch_ms(const CivilDateTime& c, int utc_offset_minutes) {
  const int64_t days = days_from_civil(c.year, c.month, c.day);
  const int64_t local_ms = days * kMsPerDay +
                           (c.hour * 3600LL + c.minute * 60LL + c.second) * 1000LL +
                           c.millisecond;
  return local_ms - static_cast<int64_t>(utc_offset_minutes) * 60'000LL;
}

CivilDateTime civil_from_epoch_ms(int64_t epoch_ms, int utc_offset_minutes) {
  const int64_t local_ms = epoch_ms + static_cast<int64_t>(utc_offset_minutes) * 60'000LL;
  const int64_t days = floor_div(local_ms, kMsPerDay);
  int64_t rem = local_ms - days * kMsPerDay;
  CivilDateTime c;
  civil_from_days(days, c.year, c.month, c.day);
  c.hour = static_cast<int>(rem / 3'600'000);
  rem %= 3'600'000;
  c.minute = static_cast<int>(rem / 60'000);
  rem %= 60'000;
  c.second = static_cast<int>(rem / 1000);
  c.millisecond = static_cast<int>(rem % 1000);
  return c;
}

void iso_year_week(int year, int month, int day, int& iso_year, int& iso_week) {
  const int64_t z = days_from_civil(year, month, day);
  // ISO weekday: Monday = 1 .. Sunday = 7. The ISO week of a date is the
  // week of its Thursday.
  const int iso_wd = static_cast<int>(positive_mod(z + 3, 7)) + 1;
  const int64_t thursday = z + (4 - iso_wd);
  int ty, tm, td;
  civil_from_days(thursday, ty, tm, td);
  iso_year = ty;
  const int64_t jan1 = days_from_civil(ty, 1, 1);
  iso_week = static_cast<int>((thursday - jan1) / 7) + 1;
}

int ny_utc_offset_minutes(int64_t epoch_ms) {
  const int64_t days = floor_div(epoch_ms, kMsPerDay);
  int year, month, day;
  civil_from_days(days, year, month, day);

  int64_t dst_on_s, dst_off_s;
  if (year >= 2007) {
    // Second Sunday of March 02:00 EST = 07:00 UTC; first Sunday of
    // November 02:00 EDT = 06:00 UTC.
    const int on_day = nth_weekday_of_month(year, 3, 0, 2);
    const int off_day = nth_weekday_of_month(year, 11, 0, 1);
    dst_on_s = days_from_civil(year, 3, on_day) * 86400 + 7 * 3600;
    dst_off_s = days_from_civil(year, 11, off_day) * 86400 + 6 * 3600;
  } else {
    // 1987-2006 rule; data coverage starts well after 1987.
    const int on_day = nth_weekday_of_month(year, 4, 0, 1);
    const int off_day = last_weekday_of_month(year, 10, 0);
    dst_on_s = days_from_civil(year, 4, on_day) * 86400 + 7 * 3600;
    dst_off_s = days_from_civil(year, 10, off_day) * 86400 + 6 * 3600;
  }

  const int64_t s = floor_div(epoch_ms, 1000);
  return (s >= dst_on_s && s < dst_off_s) ? -240 : -300;
}

MarketWeek market_week_from_sunday(int year, int month, int day) {
  const int64_t sunday = days_from_civil(year, month, day);
  if (weekday_from_days(sunday) != 0) {
    throw std::invalid_argument("market week must open on a Sunday");
  }

  // Guess EST, then re-derive with the offset in force at the guessed
  // instant. Transitions happen Sunday 02:00, hours away from both bounds,
  // so one re-derivation settles it.
  const CivilDateTime open{year, month, day, 19, 10, 0, 0};
  int64_t start = civil_to_epoch_ms(open, kEstStampOffsetMinutes);
  if (int off = ny_utc_offset_minutes(start); off != kEstStampOffsetMinutes) {
    start = civil_to_epoch_ms(open, off);
  }

  int fy, fm, fd;
  civil_from_days(sunday + 5, fy, fm, fd);
  const CivilDateTime close{fy, fm, fd, 16, 50, 0, 0};
  int64_t end = civil_to_epoch_ms(close, kEstStampOffsetMinutes);
  if (int off = ny_utc_offset_minutes(end); off != kEstStampOffsetMinutes) {
    end = civil_to_epoch_ms(close, off);
  }

  int my, mm, md;
  civil_from_days(sunday + 1, my, mm, md);
  int iso_y, iso_w;
  iso_year_week(my, mm, md, iso_y, iso_w);
  char id[16];
  std::snprintf(id, sizeof(id), "%04d-W%02d", iso_y, iso_w);

  return MarketWeek{id, start, end};
}

std::optional<MarketWeek> market_week_of(int64_t ts_ms) {
  const int off = ny_utc_offset_minutes(ts_ms);
  const CivilDateTime local = civil_from_epoch_ms(ts_ms, off);
  const int64_t z = days_from_civil(local.year, local.month, local.day);
  const int64_t sunday = z - weekday_from_days(z);
  int sy, sm, sd;
  civil_from_days(sunday, sy, sm, sd);
  MarketWeek week = market_week_from_sunday(sy, sm, sd);
  if (week.contains(ts_ms)) return week;
  return std::nullopt;
}

}  // namespace fxr
