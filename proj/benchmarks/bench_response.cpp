#include <benchmark/benchmark.h>

#include "fxr/response.hpp"
#include "fxr/signs.hpp"
#include "fxr/synth.hpp"
#include "fxr/timescales.hpp"

namespace {

struct Fixture {
  fxr::MarketWeek week = fxr::market_week_from_sunday(2019, 7, 7);
  fxr::TradeSeries events;
  fxr::SignSeriesTrade signs;

  explicit Fixture(size_t n) {
    fxr::FlowModel m;
    m.seed = 11;
    m.n_events = n;
    m.sign_autocorr = 0.6;
    m.noise_pips = 1.0;
    const fxr::SynthStream s = fxr::generate(m, week);
    fxr::WeekTicks ticks;
    ticks.week = week;
    for (const fxr::QuoteTick& t : s.ticks) {
      ticks.ts_ms.push_back(t.ts_ms);
      ticks.bid.push_back(t.bid);
      ticks.ask.push_back(t.ask);
    }
    events = fxr::to_trade_scale(ticks);
    signs = fxr::classify_trade_scale(events.midpoint);
  }
};

void BM_ResponseTrade(benchmark::State& state) {
  const Fixture f(static_cast<size_t>(state.range(0)));
  const uint32_t tau_max = 1000;
  for (auto _ : state) {
    const fxr::ResponseCurve r =
        fxr::response_trade(f.events.midpoint, f.signs, tau_max);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(f.events.size()) * tau_max);
}
BENCHMARK(BM_ResponseTrade)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_PhysicalSampling(benchmark::State& state) {
  const Fixture f(200'000);
  for (auto _ : state) {
    const fxr::PhysicalSeries p = fxr::to_physical_scale(f.events, f.week);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_PhysicalSampling)->Unit(benchmark::kMillisecond);

}  // namespace
