#include <benchmark/benchmark.h>

#include <sstream>
#include <string>
#include <vector>

#include "fxr/ingest.hpp"
#include "fxr/market_time.hpp"
#include "fxr/synth.hpp"

namespace {

std::vector<std::string> sample_lines(size_t n) {
  const fxr::MarketWeek week = fxr::market_week_from_sunday(2019, 7, 7);
  fxr::FlowModel m;
  m.seed = 7;
  m.n_events = n;
  m.noise_pips = 1.0;
  const fxr::SynthStream s = fxr::generate(m, week);
  std::vector<std::string> lines;
  lines.reserve(n);
  std::ostringstream text;
  fxr::write_ascii(text, s.ticks);
  std::istringstream in(text.str());
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void BM_ParseLine(benchmark::State& state) {
  const auto lines = sample_lines(4096);
  size_t i = 0;
  for (auto _ : state) {
    const fxr::ParsedLine p = fxr::parse_line(lines[i]);
    benchmark::DoNotOptimize(p);
    i = (i + 1) & 4095;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ParseLine);

}  // namespace

BENCHMARK_MAIN();
