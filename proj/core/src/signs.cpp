#include "fxr/signs.hpp"

#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fxr {

SignSeriesTrade classify_trade_scale(std::span<const double> midpoints) {
  SignSeriesTrade out;
  const size_t n = midpoints.size();
  out.signs.assign(n, 0);
  out.first_defined = n;
  for (size_t i = 1; i < n; ++i) {
    if (midpoints[i] != midpoints[i - 1]) {
      out.signs[i] = midpoints[i] > midpoints[i - 1] ? 1 : -1;
      if (out.first_defined == n) out.first_defined = i;
    } else if (out.first_defined < i) {
      out.signs[i] = out.signs[i - 1];
    }
  }
  return out;
}

void PhysicalSignDiagnostics::merge(const PhysicalSignDiagnostics& other) {
  zero_no_trades += other.zero_no_trades;
  zero_balanced += other.zero_balanced;
  zero_undefined_only += other.zero_undefined_only;
}

nlohmann::json PhysicalSignDiagnostics::to_json() const {
  return nlohmann::json{
      {"zero_no_trades", zero_no_trades},
      {"zero_balanced", zero_balanced},
      {"zero_undefined_only", zero_undefined_only},
  };
}

SignSeriesPhysical classify_physical_scale(const SignSeriesTrade& trade_signs,
                                           std::span<const int32_t> slot_counts) {
  const int64_t total =
      std::accumulate(slot_counts.begin(), slot_counts.end(), int64_t{0});
  if (total != static_cast<int64_t>(trade_signs.size())) {
    throw std::invalid_argument(
        "slot counts do not partition the trade-sign series");
  }

  SignSeriesPhysical out;
  out.signs.resize(slot_counts.size());
  size_t idx = 0;
  for (size_t s = 0; s < slot_counts.size(); ++s) {
    const size_t count = static_cast<size_t>(slot_counts[s]);
    if (count == 0) {
      out.signs[s] = 0;
      ++out.diagnostics.zero_no_trades;
      continue;
    }
    int64_t sum = 0;
    size_t defined = 0;
    for (size_t k = idx; k < idx + count; ++k) {
      if (trade_signs.defined(k)) {
        sum += trade_signs.signs[k];
        ++defined;
      }
    }
    idx += count;
    if (defined == 0) {
      out.signs[s] = 0;
      ++out.diagnostics.zero_undefined_only;
    } else if (sum == 0) {
      out.signs[s] = 0;
      ++out.diagnostics.zero_balanced;
    } else {
      out.signs[s] = sum > 0 ? 1 : -1;
    }
  }
  return out;
}

}  // namespace fxr
