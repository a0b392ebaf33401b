#include "fxr/synth.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include "fxr/errors.hpp"
#include "fxr/market_time.hpp"

namespace fxr {

namespace {

// mt19937_64 output is pinned by the standard; mapping to doubles and small
// ints by hand keeps streams identical across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  bool chance(double p) { return uniform01() < p; }

  // Uniform integer in [-k, k].
  int symmetric_int(int k) {
    return static_cast<int>(eng_() % (2ull * k + 1ull)) - k;
  }

 private:
  std::mt19937_64 eng_;
};

void validate(const FlowModel& m, const MarketWeek& week) {
  if (m.sign_autocorr < 0.0 || m.sign_autocorr >= 1.0) {
    throw InvalidModelError("sign_autocorr must be in [0, 1)");
  }
  if (m.impact_g < 0.0) throw InvalidModelError("impact_g must be >= 0");
  if (m.noise_pips < 0.0) throw InvalidModelError("noise_pips must be >= 0");
  if (m.base_price <= 0.0) throw InvalidModelError("base_price must be > 0");
  if (m.spread_pips <= 0.0) throw InvalidModelError("spread_pips must be > 0");
  if (m.scaling_factor <= 0) throw InvalidModelError("scaling_factor must be > 0");
  if (m.impact_permanent_frac < 0.0 || m.impact_permanent_frac > 1.0) {
    throw InvalidModelError("impact_permanent_frac must be in [0, 1]");
  }
  if (m.impact_decay < 0.0 || m.impact_decay >= 1.0) {
    throw InvalidModelError("impact_decay must be in [0, 1)");
  }
  if (m.n_events > 0 &&
      week.span_ms() < static_cast<int64_t>(m.n_events) + 1) {
    throw InvalidModelError("window too small for n_events distinct timestamps");
  }
}

}  // namespace

SynthStream generate(const FlowModel& model, const MarketWeek& week) {
  validate(model, week);
  SynthStream out;
  out.ticks.reserve(model.n_events);
  out.true_signs.reserve(model.n_events);
  if (model.n_events == 0) return out;

  Rng rng(model.seed);
  const double pip = 1.0 / model.scaling_factor;
  const double unit = 0.1 * pip;  // price grid for impact and noise
  const double half_spread = 0.5 * model.spread_pips * pip;
  const int g_units = static_cast<int>(std::lround(model.impact_g * 10.0));
  const int noise_units = static_cast<int>(std::lround(model.noise_pips * 10.0));
  const double phi = model.impact_permanent_frac;
  const double lambda = model.impact_decay;

  const int64_t span = week.span_ms();
  const int64_t n = static_cast<int64_t>(model.n_events);

  int sign = rng.chance(0.5) ? 1 : -1;
  double permanent = 0.0;  // price units of `unit`
  double transient = 0.0;
  double prev_mid = std::numeric_limits<double>::quiet_NaN();
  for (int64_t k = 0; k < n; ++k) {
    if (k > 0 && !rng.chance(model.sign_autocorr)) sign = -sign;

    const double perm_before = permanent;
    const double trans_before = transient;
    double mid = 0.0;
    for (int attempt = 0;; ++attempt) {
      const int noise = noise_units > 0 ? rng.symmetric_int(noise_units) : 0;
      permanent = perm_before + (phi * g_units * sign + noise);
      transient = lambda * trans_before + (1.0 - phi) * g_units * sign;
      mid = model.base_price + (permanent + transient) * unit;
      // A zero net move would collapse this tick into the previous quote;
      // redraw the noise so tick k stays aligned with trade event k. With
      // no noise to redraw the move is degenerate by construction: keep it.
      if (mid != prev_mid || noise_units == 0 || attempt >= 128) break;
    }
    prev_mid = mid;

    const double bid = mid - half_spread;
    const double ask = mid + half_spread;
    if (bid <= 0.0) {
      throw InvalidModelError("midpoint path went non-positive; raise base_price");
    }
    const int64_t ts = week.start_ms + (k + 1) * span / (n + 1);
    out.ticks.push_back(QuoteTick{ts, bid, ask});
    out.true_signs.push_back(static_cast<int8_t>(sign));
  }
  return out;
}

void write_ascii(std::ostream& out, std::span<const QuoteTick> ticks,
                 int stamp_offset_minutes) {
  char line[80];
  for (const QuoteTick& t : ticks) {
    const CivilDateTime c = civil_from_epoch_ms(t.ts_ms, stamp_offset_minutes);
    std::snprintf(line, sizeof(line),
                  "%04d%02d%02d %02d%02d%02d%03d,%.6f,%.6f\n", c.year, c.month,
                  c.day, c.hour, c.minute, c.second, c.millisecond, t.bid,
                  t.ask);
    out << line;
  }
}

ResponseCurve brute_force_response(std::span<const double> midpoints,
                                   std::span<const int8_t> signs,
                                   OracleMode mode, uint32_t tau_max,
                                   ReturnKind kind) {
  if (midpoints.size() > 10'000) {
    throw TooLargeError("brute-force oracle is capped at 10^4 points");
  }
  if (midpoints.size() != signs.size()) {
    throw std::invalid_argument("sign series does not match midpoint series");
  }
  if (tau_max < 1) throw std::invalid_argument("tau_max must be >= 1");

  const size_t n = midpoints.size();
  ResponseCurve out;
  out.scale = mode == OracleMode::TradeSkipUndefined ? Scale::Trade : Scale::Physical;
  out.return_kind = kind;
  out.values.assign(tau_max, ResponseCurve::kNoData);
  out.counts.assign(tau_max, 0);

  for (uint32_t tau = 1; tau <= tau_max; ++tau) {
    double sum = 0.0;
    uint64_t count = 0;
    for (size_t t = 1; t + tau <= n; ++t) {
      const int s = signs[t];
      if (s == 0 && mode != OracleMode::PhysicalInclude) continue;
      const double r =
          kind == ReturnKind::Log
              ? std::log(midpoints[t - 1 + tau] / midpoints[t - 1])
              : (midpoints[t - 1 + tau] - midpoints[t - 1]) / midpoints[t - 1];
      sum += r * s;
      ++count;
    }
    if (count > 0) {
      out.values[tau - 1] = sum / static_cast<double>(count);
      out.counts[tau - 1] = count;
    }
  }
  if (out.counts[0] == 0) {
    throw NoDataError("no admissible anchors at tau = 1");
  }
  return out;
}

}  // namespace fxr
