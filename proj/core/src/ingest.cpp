#include "fxr/ingest.hpp"

#include <zlib.h>

#include <charconv>
#include <cmath>
#include <cstring>
#include <memory>

#include <nlohmann/json.hpp>

#include "fxr/errors.hpp"

namespace fxr {

namespace {

// Consecutive lines almost always share a date, so the civil-to-epoch day
// conversion is cached on the raw YYYYMMDD digits.
struct DateCache {
  uint32_t yyyymmdd = 0;
  int64_t day_ms = 0;
  bool valid = false;
};

bool all_digits(const char* p, int n) {
  for (int i = 0; i < n; ++i) {
    if (p[i] < '0' || p[i] > '9') return false;
  }
  return true;
}

int read_int(const char* p, int n) {
  int v = 0;
  for (int i = 0; i < n; ++i) v = v * 10 + (p[i] - '0');
  return v;
}

bool parse_price(std::string_view field, double& out) {
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) return false;
  return std::isfinite(out) && out > 0.0;
}

LineStatus parse_line_impl(std::string_view line, int stamp_offset_minutes,
                           DateCache& cache, QuoteTick& out) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
    line.remove_suffix(1);
  }
  // "YYYYMMDD HHMMSSNNN," is 19 chars; two one-digit prices minimum.
  if (line.size() < 22 || line[8] != ' ' || line[18] != ',') {
    return LineStatus::Malformed;
  }
  const char* p = line.data();
  if (!all_digits(p, 8) || !all_digits(p + 9, 9)) return LineStatus::Malformed;

  const uint32_t ymd = static_cast<uint32_t>(read_int(p, 8));
  if (!cache.valid || cache.yyyymmdd != ymd) {
    const int year = static_cast<int>(ymd / 10000);
    const int month = static_cast<int>(ymd / 100 % 100);
    const int day = static_cast<int>(ymd % 100);
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) {
      return LineStatus::Malformed;
    }
    cache.yyyymmdd = ymd;
    cache.day_ms = days_from_civil(year, month, day) * 86'400'000LL;
    cache.valid = true;
  }

  const int hour = read_int(p + 9, 2);
  const int minute = read_int(p + 11, 2);
  const int second = read_int(p + 13, 2);
  const int milli = read_int(p + 15, 3);
  if (hour > 23 || minute > 59 || second > 59) return LineStatus::Malformed;

  std::string_view rest = line.substr(19);
  const size_t c1 = rest.find(',');
  if (c1 == std::string_view::npos) return LineStatus::Malformed;
  std::string_view bid_f = rest.substr(0, c1);
  std::string_view ask_f = rest.substr(c1 + 1);
  if (const size_t c2 = ask_f.find(','); c2 != std::string_view::npos) {
    // Optional provider volume column; must at least look numeric.
    std::string_view vol_f = ask_f.substr(c2 + 1);
    ask_f = ask_f.substr(0, c2);
    double ignored;
    if (!parse_price(vol_f, ignored) && vol_f != "0") return LineStatus::Malformed;
  }

  double bid, ask;
  if (!parse_price(bid_f, bid) || !parse_price(ask_f, ask)) {
    return LineStatus::Malformed;
  }

  out.ts_ms = cache.day_ms +
              (hour * 3600LL + minute * 60LL + second) * 1000LL + milli -
              static_cast<int64_t>(stamp_offset_minutes) * 60'000LL;
  out.bid = bid;
  out.ask = ask;
  if (bid >= ask) return LineStatus::Crossed;
  return LineStatus::Ok;
}

struct GzCloser {
  void operator()(gzFile f) const {
    if (f) gzclose(f);
  }
};
using GzHandle = std::unique_ptr<gzFile_s, GzCloser>;

}  // namespace

ParsedLine parse_line(std::string_view line, int stamp_offset_minutes) {
  DateCache cache;
  ParsedLine result;
  result.status = parse_line_impl(line, stamp_offset_minutes, cache, result.tick);
  return result;
}

void IngestStats::merge(const IngestStats& other) {
  lines_total += other.lines_total;
  ticks += other.ticks;
  lines_bad += other.lines_bad;
  crossed += other.crossed;
  out_of_order += other.out_of_order;
  in_window += other.in_window;
  weeks_seen += other.weeks_seen;
}

nlohmann::json IngestStats::to_json() const {
  return nlohmann::json{
      {"lines_total", lines_total}, {"ticks", ticks},
      {"lines_bad", lines_bad},     {"crossed", crossed},
      {"out_of_order", out_of_order}, {"in_window", in_window},
      {"weeks_seen", weeks_seen},
  };
}

void WeekTicks::append(const WeekTicks& other) {
  if (other.week.start_ms != week.start_ms) {
    throw std::invalid_argument("cannot append ticks from a different week");
  }
  ts_ms.insert(ts_ms.end(), other.ts_ms.begin(), other.ts_ms.end());
  bid.insert(bid.end(), other.bid.begin(), other.bid.end());
  ask.insert(ask.end(), other.ask.begin(), other.ask.end());
}

IngestStats scan_file(const std::string& path, const WeekSink& sink,
                      int stamp_offset_minutes) {
  // zlib reads plain files transparently, so one code path covers both.
  GzHandle file(gzopen(path.c_str(), "rb"));
  if (!file) throw IoError("cannot open tick file: " + path);
  gzbuffer(file.get(), 1u << 20);

  IngestStats stats;
  WeekTicks cur;
  bool cur_open = false;
  int64_t prev_ts = INT64_MIN;
  DateCache cache;

  auto process = [&](std::string_view line) {
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) return;
    ++stats.lines_total;
    QuoteTick tick;
    const LineStatus status =
        parse_line_impl(line, stamp_offset_minutes, cache, tick);
    if (status == LineStatus::Malformed) {
      ++stats.lines_bad;
      return;
    }
    if (status == LineStatus::Crossed) {
      ++stats.crossed;
      return;
    }
    if (tick.ts_ms < prev_ts) {
      ++stats.lines_bad;
      ++stats.out_of_order;
      return;
    }
    prev_ts = tick.ts_ms;
    ++stats.ticks;

    if (!cur_open || !cur.week.contains(tick.ts_ms)) {
      auto week = market_week_of(tick.ts_ms);
      if (!week) return;  // weekend gap: valid tick, outside market time
      if (cur_open) {
        ++stats.weeks_seen;
        sink(std::move(cur));
        cur = WeekTicks{};
      }
      cur.week = *week;
      cur_open = true;
    }
    cur.ts_ms.push_back(tick.ts_ms);
    cur.bid.push_back(tick.bid);
    cur.ask.push_back(tick.ask);
    ++stats.in_window;
  };

  std::vector<char> buf(1u << 20);
  std::string carry;
  for (;;) {
    const int n = gzread(file.get(), buf.data(), static_cast<unsigned>(buf.size()));
    if (n < 0) throw IoError("read error in tick file: " + path);
    if (n == 0) break;
    std::string_view chunk(buf.data(), static_cast<size_t>(n));
    size_t start = 0;
    for (;;) {
      const size_t nl = chunk.find('\n', start);
      if (nl == std::string_view::npos) {
        carry.append(chunk.substr(start));
        break;
      }
      if (carry.empty()) {
        process(chunk.substr(start, nl - start));
      } else {
        carry.append(chunk.substr(start, nl - start));
        process(carry);
        carry.clear();
      }
      start = nl + 1;
    }
  }
  if (!carry.empty()) process(carry);

  if (cur_open) {
    ++stats.weeks_seen;
    sink(std::move(cur));
  }
  return stats;
}

std::pair<std::vector<WeekTicks>, IngestStats> scan_file(
    const std::string& path, int stamp_offset_minutes) {
  std::vector<WeekTicks> weeks;
  IngestStats stats = scan_file(
      path, [&](WeekTicks&& w) { weeks.push_back(std::move(w)); },
      stamp_offset_minutes);
  return {std::move(weeks), stats};
}

std::vector<QuoteTick> market_week_filter(std::span<const QuoteTick> ticks,
                                          const MarketWeek& week) {
  std::vector<QuoteTick> out;
  for (const QuoteTick& t : ticks) {
    if (week.contains(t.ts_ms)) out.push_back(t);
  }
  return out;
}

}  // namespace fxr
