#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fxr/market_time.hpp"

namespace fxr {

struct QuoteTick {
  int64_t ts_ms = 0;
  double bid = 0.0;
  double ask = 0.0;

  double midpoint() const { return 0.5 * (bid + ask); }
  double spread() const { return ask - bid; }
};

enum class LineStatus { Ok, Malformed, Crossed };

struct ParsedLine {
  LineStatus status = LineStatus::Malformed;
  QuoteTick tick{};
};

// One record: "YYYYMMDD HHMMSSNNN,<bid>,<ask>". Prices are parsed exactly as
// written. bid >= ask reports Crossed; any structural defect reports
// Malformed. A trailing numeric volume column (always zero in provider
// files) is tolerated and ignored.
ParsedLine parse_line(std::string_view line,
                      int stamp_offset_minutes = kEstStampOffsetMinutes);

struct IngestStats {
  uint64_t lines_total = 0;
  uint64_t ticks = 0;         // parse-valid lines, in or out of market time
  uint64_t lines_bad = 0;     // malformed, including timestamp regressions
  uint64_t crossed = 0;
  uint64_t out_of_order = 0;  // subset of lines_bad
  uint64_t in_window = 0;     // ticks that fell inside some market week
  uint32_t weeks_seen = 0;

  void merge(const IngestStats& other);
  nlohmann::json to_json() const;
};

// Columnar batch of the in-window ticks of one market week.
struct WeekTicks {
  MarketWeek week;
  std::vector<int64_t> ts_ms;
  std::vector<double> bid;
  std::vector<double> ask;

  size_t size() const { return ts_ms.size(); }
  void append(const WeekTicks& other);
};

using WeekSink = std::function<void(WeekTicks&&)>;

// Single pass over a tick file (plain or gzip-compressed), partitioning
// in-window ticks into market weeks. Completed weeks are handed to the sink
// in file order; only the week under construction is buffered, so memory is
// bounded by the largest week regardless of file size. Bad lines and crossed
// quotes are counted and skipped, as is any line whose timestamp runs
// backwards. Throws IoError if the file cannot be read; an empty file is a
// zero-stats result, not an error.
IngestStats scan_file(const std::string& path, const WeekSink& sink,
                      int stamp_offset_minutes = kEstStampOffsetMinutes);

// Convenience overload collecting every week.
std::pair<std::vector<WeekTicks>, IngestStats> scan_file(
    const std::string& path, int stamp_offset_minutes = kEstStampOffsetMinutes);

// Ticks with start_ms <= ts < end_ms, order preserved. Idempotent.
std::vector<QuoteTick> market_week_filter(std::span<const QuoteTick> ticks,
                                          const MarketWeek& week);

}  // namespace fxr
