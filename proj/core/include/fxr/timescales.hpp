#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fxr/ingest.hpp"

namespace fxr {

struct TradeEvent {
  size_t n = 0;  // 0-based trade index within the week
  int64_t ts_ms = 0;
  double midpoint = 0.0;
};

// Trade-time scale: one event per quote change. Columnar; event n is the
// n-th entry of each column. The quoted spread at the event is kept for
// pip-spread statistics.
struct TradeSeries {
  std::vector<int64_t> ts_ms;
  std::vector<double> midpoint;
  std::vector<double> spread;

  size_t size() const { return ts_ms.size(); }
  TradeEvent event(size_t n) const { return {n, ts_ms[n], midpoint[n]}; }
};

// One event per tick whose (bid, ask) differs from the previous tick's; the
// first tick of the week always opens the series. An empty week yields an
// empty series.
TradeSeries to_trade_scale(const WeekTicks& ticks);

struct SecondSample {
  int64_t sec = 0;  // 0-based slot index from week start
  double midpoint = 0.0;
  int32_t n_trades = 0;
};

// Physical-time scale: one sample per whole second of the market week.
// midpoint[s] is the last event midpoint with ts < slot end (previous-tick
// sampling, forward-filled; slots before the first event are seeded with
// the first event's midpoint). n_trades[s] counts events in [s, s+1).
struct PhysicalSeries {
  int64_t start_ms = 0;
  std::vector<double> midpoint;
  std::vector<int32_t> n_trades;

  size_t slots() const { return midpoint.size(); }
  SecondSample sample(size_t sec) const {
    return {static_cast<int64_t>(sec), midpoint[sec], n_trades[sec]};
  }
};

// Sample the event series onto the week's second grid. An empty event
// series yields an empty series; otherwise the slot count is exactly
// week.slot_count().
PhysicalSeries to_physical_scale(const TradeSeries& events, const MarketWeek& week);

// Debug/verification dumps: "index,timestamp_ms,midpoint[,n_trades]".
void write_trade_csv(std::ostream& out, const TradeSeries& s);
void write_physical_csv(std::ostream& out, const PhysicalSeries& s);

}  // namespace fxr
