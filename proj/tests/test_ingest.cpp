#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "fxr/errors.hpp"
#include "fxr/ingest.hpp"

using namespace fxr;

namespace {

const std::string kDir = "ingest_test_data";

std::string write_file(const std::string& name, const std::string& content) {
  std::filesystem::create_directories(kDir);
  const std::string path = kDir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("parse_line accepts the provider record format") {
  const ParsedLine p = parse_line("20190102 070005123,1.10200,1.10210");
  REQUIRE(p.status == LineStatus::Ok);
  CHECK(p.tick.bid == 1.10200);
  CHECK(p.tick.ask == 1.10210);
  // 07:00:05.123 EST = 12:00:05.123 UTC
  CHECK(p.tick.ts_ms == 1546430405123LL);

  SUBCASE("a trailing provider volume column is tolerated") {
    const ParsedLine q = parse_line("20190102 070005123,1.10200,1.10210,0");
    CHECK(q.status == LineStatus::Ok);
    CHECK(q.tick.ask == 1.10210);
  }
  SUBCASE("windows line endings are tolerated") {
    CHECK(parse_line("20190102 070005123,1.10200,1.10210\r").status ==
          LineStatus::Ok);
  }
  SUBCASE("configurable stamp offset") {
    const ParsedLine utc = parse_line("20190102 120005123,1.1,1.2", 0);
    CHECK(utc.status == LineStatus::Ok);
    CHECK(utc.tick.ts_ms == 1546430405123LL);
  }
}

TEST_CASE("parse_line rejects crossed and locked quotes") {
  CHECK(parse_line("20190102 070005123,1.10210,1.10200").status ==
        LineStatus::Crossed);
  CHECK(parse_line("20190102 070005123,1.10200,1.10200").status ==
        LineStatus::Crossed);
}

TEST_CASE("parse_line rejects malformed lines") {
  const char* bad[] = {
      "",
      "20190102,1.1",                              // field count
      "20190102 070005123,1.10200",                // missing ask
      "20190102 070005123,1.10200,",               // empty ask
      "20190102 070005123,,1.10210",               // empty bid
      "20190102 070005123,abc,1.10210",            // non-numeric
      "20190102 070005123,1.10200,1.10210,x",      // junk volume
      "20190102 070005123,-1.0,1.10210",           // non-positive price
      "20190102 070005123,0,1.10210",              // zero price
      "20190102 070005123,nan,1.10210",            // non-finite
      "20190102 070005123,inf,1.10210",
      "20190113 070005123 1.10200 1.10210",        // wrong delimiter
      "2019010a 070005123,1.10200,1.10210",        // date digits
      "20191302 070005123,1.10200,1.10210",        // month 13
      "20190230 070005123,1.10200,1.10210",        // Feb 30
      "20190102 240005123,1.10200,1.10210",        // hour 24
      "20190102 076005123,1.10200,1.10210",        // minute 60
      "20190102 070061123,1.10200,1.10210",        // second 61
      "20190102 07000512,1.10200,1.10210",         // short time field
  };
  for (const char* line : bad) {
    CAPTURE(line);
    CHECK(parse_line(line).status == LineStatus::Malformed);
  }
}

TEST_CASE("scan_file counts and partitions") {
  SUBCASE("three good lines and one malformed") {
    // Wednesday 2019-01-02 is inside the 2018-12-30 market week.
    const std::string path = write_file(
        "mixed.csv",
        "20190102 070005123,1.10200,1.10210\n"
        "garbage line\n"
        "20190102 070006000,1.10201,1.10211\n"
        "20190102 070007000,1.10202,1.10212\n");
    auto [weeks, stats] = scan_file(path);
    CHECK(stats.lines_total == 4);
    CHECK(stats.ticks == 3);
    CHECK(stats.lines_bad == 1);
    CHECK(stats.crossed == 0);
    CHECK(stats.in_window == 3);
    CHECK(stats.weeks_seen == 1);
    REQUIRE(weeks.size() == 1);
    CHECK(weeks[0].size() == 3);
    CHECK(weeks[0].week.week_id == "2019-W01");
  }

  SUBCASE("a file entirely on Saturday yields no weeks") {
    const std::string path = write_file(
        "saturday.csv",
        "20190105 100000000,1.10200,1.10210\n"
        "20190105 110000000,1.10201,1.10211\n");
    auto [weeks, stats] = scan_file(path);
    CHECK(stats.ticks == 2);
    CHECK(stats.in_window == 0);
    CHECK(stats.weeks_seen == 0);
    CHECK(weeks.empty());
  }

  SUBCASE("crossed quotes are counted and skipped") {
    const std::string path = write_file(
        "crossed.csv",
        "20190102 070005123,1.10200,1.10210\n"
        "20190102 070006000,1.10220,1.10210\n");
    auto [weeks, stats] = scan_file(path);
    CHECK(stats.ticks == 1);
    CHECK(stats.crossed == 1);
    CHECK(stats.lines_total == 2);
  }

  SUBCASE("timestamp regressions are malformed-class, equal stamps pass") {
    const std::string path = write_file(
        "regression.csv",
        "20190102 070006000,1.10200,1.10210\n"
        "20190102 070006000,1.10201,1.10211\n"
        "20190102 070005000,1.10202,1.10212\n"
        "20190102 070007000,1.10203,1.10213\n");
    auto [weeks, stats] = scan_file(path);
    CHECK(stats.ticks == 3);
    CHECK(stats.lines_bad == 1);
    CHECK(stats.out_of_order == 1);
    REQUIRE(weeks.size() == 1);
    CHECK(weeks[0].size() == 3);
  }

  SUBCASE("empty file is a warning-level zero result") {
    const std::string path = write_file("empty.csv", "");
    auto [weeks, stats] = scan_file(path);
    CHECK(stats.lines_total == 0);
    CHECK(weeks.empty());
  }

  SUBCASE("missing file throws IoError") {
    CHECK_THROWS_AS(scan_file(kDir + "/no_such_file.csv"), IoError);
  }
}

TEST_CASE("market window boundaries, EST winter and EDT summer") {
  SUBCASE("winter: NY local equals the EST stamp") {
    const std::string path = write_file(
        "winter_bounds.csv",
        "20181230 190959999,1.1,1.2\n"   // Sun 19:09:59.999 NY: excluded
        "20181230 191000000,1.1,1.2\n"   // Sun 19:10:00.000 NY: included
        "20190104 164959999,1.1,1.2\n"   // Fri 16:49:59.999 NY: included
        "20190104 165000000,1.1,1.2\n"); // Fri 16:50:00.000 NY: excluded
    auto [weeks, stats] = scan_file(path);
    CHECK(stats.ticks == 4);
    CHECK(stats.in_window == 2);
    REQUIRE(weeks.size() == 1);
    CHECK(weeks[0].ts_ms.front() == weeks[0].week.start_ms);
    CHECK(weeks[0].ts_ms.back() == weeks[0].week.end_ms - 1);
  }

  SUBCASE("summer: NY local runs one hour ahead of the EST stamp") {
    const std::string path = write_file(
        "summer_bounds.csv",
        "20190707 180959999,1.1,1.2\n"   // 19:09:59.999 EDT: excluded
        "20190707 181000000,1.1,1.2\n"   // 19:10:00.000 EDT: included
        "20190712 154959999,1.1,1.2\n"   // 16:49:59.999 EDT: included
        "20190712 155000000,1.1,1.2\n"); // 16:50:00.000 EDT: excluded
    auto [weeks, stats] = scan_file(path);
    CHECK(stats.in_window == 2);
    REQUIRE(weeks.size() == 1);
    CHECK(weeks[0].week.start_ms == 1562541000000LL);
    CHECK(weeks[0].ts_ms.front() == 1562541000000LL);
  }
}

TEST_CASE("weeks_seen matches a calendar-oracle enumeration") {
  // Hourly ticks through January 2019 (EST stamps). The oracle enumerates
  // Sunday-opening windows with plain fixed-offset arithmetic: January is
  // entirely EST, so window bounds are exactly Sunday 19:10 EST.
  std::string content;
  char line[64];
  for (int day = 1; day <= 31; ++day) {
    for (int hour = 0; hour < 24; ++hour) {
      std::snprintf(line, sizeof(line), "201901%02d %02d0000000,1.10,1.11\n",
                    day, hour);
      content += line;
    }
  }
  const std::string path = write_file("january.csv", content);
  auto [weeks, stats] = scan_file(path);

  // Oracle: Sundays 2018-12-30, Jan 6, 13, 20, 27 all open windows that
  // intersect [Jan 1 00:00, Jan 31 23:00] EST and contain hourly ticks.
  CHECK(stats.weeks_seen == 5);
  CHECK(weeks.size() == 5);
  for (size_t i = 1; i < weeks.size(); ++i) {
    CHECK(weeks[i - 1].week.end_ms <= weeks[i].week.start_ms);
  }
  // No tick in two different weeks: totals must partition in_window.
  size_t total = 0;
  for (const auto& w : weeks) {
    total += w.size();
    for (int64_t ts : w.ts_ms) CHECK(w.week.contains(ts));
  }
  CHECK(total == stats.in_window);
}

TEST_CASE("parse totality: every line lands in exactly one counter") {
  std::mt19937_64 rng(19);
  std::string content;
  uint64_t expect_lines = 0;
  for (int i = 0; i < 2000; ++i) {
    const int kind = static_cast<int>(rng() % 4);
    char line[64];
    const int h = static_cast<int>(rng() % 24);
    switch (kind) {
      case 0:
        std::snprintf(line, sizeof(line), "20190102 %02d0000000,1.10,1.11", h);
        break;
      case 1:
        std::snprintf(line, sizeof(line), "20190102 %02d0000000,1.12,1.11", h);
        break;
      case 2:
        std::snprintf(line, sizeof(line), "junk-%d", i);
        break;
      default:
        std::snprintf(line, sizeof(line), "20190102 %02d0000000,zz,1.11", h);
        break;
    }
    content += line;
    content += '\n';
    ++expect_lines;
  }
  const std::string path = write_file("totality.csv", content);
  auto [weeks, stats] = scan_file(path);
  CHECK(stats.lines_total == expect_lines);
  CHECK(stats.ticks + stats.lines_bad + stats.crossed == stats.lines_total);
}

TEST_CASE("market_week_filter is exact and idempotent") {
  const MarketWeek week = market_week_from_sunday(2019, 7, 7);
  std::vector<QuoteTick> ticks;
  for (int i = -5; i < 10; ++i) {
    ticks.push_back(QuoteTick{week.start_ms + i * 60'000LL, 1.1, 1.2});
  }
  ticks.push_back(QuoteTick{week.end_ms - 1, 1.1, 1.2});
  ticks.push_back(QuoteTick{week.end_ms, 1.1, 1.2});

  const std::vector<QuoteTick> once = market_week_filter(ticks, week);
  CHECK(once.size() == 11);  // 10 from the loop (i >= 0) + end_ms - 1
  CHECK(once.front().ts_ms == week.start_ms);
  CHECK(once.back().ts_ms == week.end_ms - 1);
  for (size_t i = 1; i < once.size(); ++i) {
    CHECK(once[i - 1].ts_ms <= once[i].ts_ms);
  }

  const std::vector<QuoteTick> twice = market_week_filter(once, week);
  REQUIRE(twice.size() == once.size());
  for (size_t i = 0; i < once.size(); ++i) {
    CHECK(twice[i].ts_ms == once[i].ts_ms);
  }
}

TEST_CASE("gzip-compressed input scans identically") {
  const std::string plain =
      "20190102 070005123,1.10200,1.10210\n"
      "20190102 070006000,1.10201,1.10211\n"
      "garbage\n"
      "20190102 070007000,1.10202,1.10212\n";
  const std::string plain_path = write_file("pair.csv", plain);

  std::filesystem::create_directories(kDir);
  const std::string gz_path = kDir + "/pair.csv.gz";
  gzFile gz = gzopen(gz_path.c_str(), "wb");
  REQUIRE(gz != nullptr);
  gzwrite(gz, plain.data(), static_cast<unsigned>(plain.size()));
  gzclose(gz);

  auto [w1, s1] = scan_file(plain_path);
  auto [w2, s2] = scan_file(gz_path);
  CHECK(s1.lines_total == s2.lines_total);
  CHECK(s1.ticks == s2.ticks);
  CHECK(s1.lines_bad == s2.lines_bad);
  REQUIRE(w1.size() == w2.size());
  for (size_t i = 0; i < w1.size(); ++i) {
    REQUIRE(w1[i].size() == w2[i].size());
    for (size_t k = 0; k < w1[i].size(); ++k) {
      CHECK(w1[i].ts_ms[k] == w2[i].ts_ms[k]);
      CHECK(w1[i].bid[k] == w2[i].bid[k]);
      CHECK(w1[i].ask[k] == w2[i].ask[k]);
    }
  }
}
