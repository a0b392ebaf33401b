#include "fxr/timescales.hpp"

#include <cinttypes>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace fxr {

TradeSeries to_trade_scale(const WeekTicks& ticks) {
  TradeSeries s;
  const size_t n = ticks.size();
  if (n == 0) return s;
  s.ts_ms.reserve(n);
  s.midpoint.reserve(n);
  s.spread.reserve(n);
  double prev_bid = 0.0, prev_ask = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double bid = ticks.bid[i];
    const double ask = ticks.ask[i];
    if (i > 0 && bid == prev_bid && ask == prev_ask) continue;
    s.ts_ms.push_back(ticks.ts_ms[i]);
    s.midpoint.push_back(0.5 * (bid + ask));
    s.spread.push_back(ask - bid);
    prev_bid = bid;
    prev_ask = ask;
  }
  return s;
}

PhysicalSeries to_physical_scale(const TradeSeries& events, const MarketWeek& week) {
  PhysicalSeries out;
  out.start_ms = week.start_ms;
  if (events.size() == 0) return out;
  if (week.span_ms() % 1000 != 0) {
    throw std::invalid_argument("market week span must be whole seconds");
  }

  const size_t slots = static_cast<size_t>(week.slot_count());
  out.midpoint.resize(slots);
  out.n_trades.resize(slots);

  size_t idx = 0;
  const size_t n = events.size();
  double last_mid = events.midpoint[0];  // seed for slots before first event
  for (size_t s = 0; s < slots; ++s) {
    const int64_t slot_end = week.start_ms + static_cast<int64_t>(s + 1) * 1000;
    size_t begin = idx;
    while (idx < n && events.ts_ms[idx] < slot_end) ++idx;
    if (idx > begin) last_mid = events.midpoint[idx - 1];
    out.midpoint[s] = last_mid;
    out.n_trades[s] = static_cast<int32_t>(idx - begin);
  }
  return out;
}

void write_trade_csv(std::ostream& out, const TradeSeries& s) {
  out << "n,ts_ms,midpoint\n";
  char buf[96];
  for (size_t i = 0; i < s.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%" PRId64 ",%.17g\n", i, s.ts_ms[i],
                  s.midpoint[i]);
    out << buf;
  }
}

void write_physical_csv(std::ostream& out, const PhysicalSeries& s) {
  out << "sec,ts_ms,midpoint,n_trades\n";
  char buf[96];
  for (size_t i = 0; i < s.slots(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%" PRId64 ",%.17g,%d\n", i,
                  s.start_ms + static_cast<int64_t>(i) * 1000, s.midpoint[i],
                  s.n_trades[i]);
    out << buf;
  }
}

}  // namespace fxr
