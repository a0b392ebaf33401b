#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fxr/ingest.hpp"
#include "fxr/response.hpp"

namespace fxr {

// Synthetic quote-flow model with known ground truth. Signs follow a
// persistence chain: each sign repeats the previous one with probability
// sign_autocorr, so the lag-k sign autocorrelation converges to
// (2*sign_autocorr - 1)^k. Each trade moves the midpoint by impact_g pips in
// the sign's direction; a share impact_permanent_frac of that move is
// permanent and the rest decays geometrically by impact_decay per later
// trade. Midpoint noise is a symmetric uniform random walk on a 0.1-pip
// grid. With the default fully-permanent impact the expected trade-scale
// response has the closed form
//   E[R(tau)] ~ (g_px / m) * sum_{k<tau} (2*rho - 1)^k,
// which rises and flattens; a transient share produces the
// rise-maximum-decline shape instead.
//
// This is a test fixture, not a market model.
struct FlowModel {
  uint64_t seed = 1;
  uint64_t n_events = 10'000;
  double sign_autocorr = 0.5;  // rho: P(sign repeats); 0.5 = iid signs
  double impact_g = 1.0;       // pips moved in sign direction per trade
  double noise_pips = 0.0;     // uniform noise amplitude, pips
  double base_price = 1.1300;
  double spread_pips = 1.0;    // constant quoted spread
  int scaling_factor = 10'000;
  double impact_permanent_frac = 1.0;  // 1.0 = every move is permanent
  double impact_decay = 0.99;          // transient decay per trade
};

struct SynthStream {
  std::vector<QuoteTick> ticks;
  std::vector<int8_t> true_signs;  // one per tick, +1 or -1
};

// Deterministic per (seed, parameters). Timestamps are strictly increasing
// and evenly spread over the window; every tick changes the quote whenever
// the model allows it (impact_g > 0 or noise_pips > 0), so tick k maps 1:1
// to trade event k. Throws InvalidModelError on out-of-range parameters or
// if the window cannot hold n_events distinct milliseconds.
SynthStream generate(const FlowModel& model, const MarketWeek& week);

// Render ticks in the ingest ASCII format ("YYYYMMDD HHMMSSNNN,bid,ask").
void write_ascii(std::ostream& out, std::span<const QuoteTick> ticks,
                 int stamp_offset_minutes = kEstStampOffsetMinutes);

enum class OracleMode {
  TradeSkipUndefined,  // signs: 0 = undefined, skip anchor
  PhysicalExclude,     // signs: 0 = no trade / balanced, skip anchor
  PhysicalInclude,     // zero signs kept as zero-product anchors
};

// Literal double-loop restatement of the response definition, kept
// deliberately independent of the production estimator (plain summation, no
// shared code). Reference implementation for oracle-equivalence tests; the
// quadratic cost is capped at 10^4 points (TooLargeError beyond). Throws
// NoDataError when no anchor is admissible at tau = 1.
ResponseCurve brute_force_response(std::span<const double> midpoints,
                                   std::span<const int8_t> signs,
                                   OracleMode mode, uint32_t tau_max,
                                   ReturnKind kind = ReturnKind::Relative);

}  // namespace fxr
