#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace fxr {

// Trade-time signs: +1 buyer-initiated, -1 seller-initiated, 0 = undefined.
// Undefined entries form a leading prefix only (the first event, plus any
// run of equal midpoints before the first change); once a sign is defined
// every later entry is defined.
struct SignSeriesTrade {
  std::vector<int8_t> signs;
  size_t first_defined = 0;  // == signs.size() when nothing is defined

  size_t size() const { return signs.size(); }
  bool defined(size_t n) const { return n >= first_defined && n < signs.size(); }
  size_t undefined_count() const { return first_defined; }
};

// sign[n] = sgn(m[n] - m[n-1]) when the midpoints differ, else the previous
// sign. No base case exists, so sign[0] and any leading run of equal
// midpoints stay undefined; such events are excluded from response averages
// rather than guessed.
SignSeriesTrade classify_trade_scale(std::span<const double> midpoints);

struct PhysicalSignDiagnostics {
  uint64_t zero_no_trades = 0;       // seconds with no events
  uint64_t zero_balanced = 0;        // buys and sells cancelled exactly
  uint64_t zero_undefined_only = 0;  // only leading-undefined signs present

  void merge(const PhysicalSignDiagnostics& other);
  nlohmann::json to_json() const;
};

// Physical-time signs: sign of the sum of the second's defined trade signs;
// 0 for an empty or exactly balanced second. Always fully defined.
struct SignSeriesPhysical {
  std::vector<int8_t> signs;
  PhysicalSignDiagnostics diagnostics;

  size_t size() const { return signs.size(); }
};

// slot_counts is the per-second event partition (n_trades of the physical
// series); its total must equal trade_signs.size().
SignSeriesPhysical classify_physical_scale(const SignSeriesTrade& trade_signs,
                                           std::span<const int32_t> slot_counts);

}  // namespace fxr
