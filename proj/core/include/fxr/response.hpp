#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fxr/kahan.hpp"
#include "fxr/signs.hpp"

namespace fxr {

enum class Scale { Trade, Physical };
enum class ZeroHandling { Exclude, Include };
enum class ReturnKind { Relative, Log };

std::string_view to_string(Scale s);
std::string_view to_string(ZeroHandling z);
std::string_view to_string(ReturnKind r);
Scale scale_from_string(std::string_view s);
ZeroHandling zero_handling_from_string(std::string_view s);
ReturnKind return_kind_from_string(std::string_view s);

// Relative price change from index t to t + tau: (m[t+tau] - m[t]) / m[t],
// or the log variant for sensitivity checks. Throws OutOfRangeError when the
// window leaves the series; such anchors are excluded from averages, never
// wrapped.
double midpoint_return(std::span<const double> midpoints, size_t t, size_t tau,
                       ReturnKind kind = ReturnKind::Relative);

// Price response per time lag. Lags run 1..tau_max; a lag with no admissible
// anchors carries NaN and count 0, never a fabricated 0.
struct ResponseCurve {
  Scale scale = Scale::Trade;
  ReturnKind return_kind = ReturnKind::Relative;
  std::vector<double> values;    // index tau-1
  std::vector<uint64_t> counts;  // index tau-1

  static constexpr double kNoData = std::numeric_limits<double>::quiet_NaN();

  uint32_t tau_max() const { return static_cast<uint32_t>(values.size()); }
  bool has_data(uint32_t tau) const { return counts[tau - 1] > 0; }
  double value(uint32_t tau) const { return values[tau - 1]; }
  uint64_t count(uint32_t tau) const { return counts[tau - 1]; }
};

// Pooled response estimator: R(tau) = < r(t-1, tau) * sign(t) >, averaged by
// anchor count over every week added. The return anchors one step before the
// sign's index, so the first return step is not the move that defined the
// sign. Weeks are independent; anchors never span a week boundary.
//
// Accumulation is compensated and the week order fixes the summation order,
// so curves are bit-reproducible for a given input ordering.
class ResponseAccumulator {
 public:
  ResponseAccumulator(Scale scale, uint32_t tau_max,
                      ReturnKind kind = ReturnKind::Relative);

  // Trade scale: anchors are events with a defined sign.
  void add_trade_week(std::span<const double> midpoints,
                      const SignSeriesTrade& signs);

  // Physical scale: one pass accumulates both zero-handling variants. The
  // numerator is shared (zero-sign anchors contribute exactly zero); only
  // the anchor counts differ.
  void add_physical_week(std::span<const double> midpoints,
                         std::span<const int8_t> signs);

  // Throws NoDataError if no anchors were admissible at tau = 1.
  ResponseCurve curve(ZeroHandling zero = ZeroHandling::Exclude) const;

  Scale scale() const { return scale_; }
  uint32_t tau_max() const { return tau_max_; }
  uint64_t weeks_added() const { return weeks_added_; }

 private:
  Scale scale_;
  uint32_t tau_max_;
  ReturnKind kind_;
  uint64_t weeks_added_ = 0;
  std::vector<KahanSum> sums_;
  std::vector<uint64_t> counts_;      // nonzero/defined-sign anchors
  std::vector<uint64_t> counts_all_;  // physical only: all anchors
};

// Single-week conveniences.
ResponseCurve response_trade(std::span<const double> midpoints,
                             const SignSeriesTrade& signs, uint32_t tau_max,
                             ReturnKind kind = ReturnKind::Relative);

struct PhysicalResponses {
  ResponseCurve excluding;  // Eq.-(9) convention: zero-sign seconds excluded
  ResponseCurve including;
};

PhysicalResponses response_physical(std::span<const double> midpoints,
                                    std::span<const int8_t> signs,
                                    uint32_t tau_max,
                                    ReturnKind kind = ReturnKind::Relative);

// Mean pip bid-ask spread over all trade events of a pair-year, pooled
// across weeks by event count.
struct SpreadStat {
  std::string symbol;
  int year = 0;
  double avg_pip_spread = 0.0;
  uint64_t n_obs = 0;
};

class SpreadAccumulator {
 public:
  explicit SpreadAccumulator(double scaling_factor)
      : scaling_factor_(scaling_factor) {}

  void add(std::span<const double> spreads);

  // Throws NoDataError when no observations were added.
  SpreadStat finalize(std::string symbol, int year) const;

 private:
  double scaling_factor_;
  KahanSum sum_pips_;
  uint64_t n_ = 0;
};

// Unweighted pointwise mean of curves sharing a scale and tau grid; a curve
// with no data at some tau is omitted from that tau's mean. Used for group
// averages and for the per-week averaging option.
ResponseCurve mean_curves(std::span<const ResponseCurve* const> curves);

struct GroupCurveInput {
  std::string symbol;
  int group = 0;  // 1-based
  const ResponseCurve* curve = nullptr;
};

struct GroupCurve {
  int group = 0;
  std::vector<std::string> members;  // sorted by symbol
  ResponseCurve curve;
};

// Average the member curves of each group, 1..n_groups. Empty groups are
// omitted from the result and reported through empty_groups so the caller
// can warn.
std::vector<GroupCurve> group_average(std::vector<GroupCurveInput> inputs,
                                      int n_groups,
                                      std::vector<int>* empty_groups = nullptr);

}  // namespace fxr
