#include "fxr/response.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fxr/errors.hpp"

namespace fxr {

std::string_view to_string(Scale s) {
  return s == Scale::Trade ? "trade" : "physical";
}

std::string_view to_string(ZeroHandling z) {
  return z == ZeroHandling::Exclude ? "excl" : "incl";
}

std::string_view to_string(ReturnKind r) {
  return r == ReturnKind::Relative ? "relative" : "log";
}

Scale scale_from_string(std::string_view s) {
  if (s == "trade") return Scale::Trade;
  if (s == "physical") return Scale::Physical;
  throw std::invalid_argument("unknown scale: " + std::string(s));
}

ZeroHandling zero_handling_from_string(std::string_view s) {
  if (s == "excl" || s == "exclude") return ZeroHandling::Exclude;
  if (s == "incl" || s == "include") return ZeroHandling::Include;
  throw std::invalid_argument("unknown zero handling: " + std::string(s));
}

ReturnKind return_kind_from_string(std::string_view s) {
  if (s == "relative") return ReturnKind::Relative;
  if (s == "log") return ReturnKind::Log;
  throw std::invalid_argument("unknown return kind: " + std::string(s));
}

double midpoint_return(std::span<const double> midpoints, size_t t, size_t tau,
                       ReturnKind kind) {
  if (t >= midpoints.size() || tau > midpoints.size() - 1 - t) {
    throw OutOfRangeError("return window crosses the week boundary");
  }
  if (kind == ReturnKind::Log) return std::log(midpoints[t + tau] / midpoints[t]);
  return (midpoints[t + tau] - midpoints[t]) / midpoints[t];
}

ResponseAccumulator::ResponseAccumulator(Scale scale, uint32_t tau_max,
                                         ReturnKind kind)
    : scale_(scale), tau_max_(tau_max), kind_(kind) {
  if (tau_max_ < 1) throw std::invalid_argument("tau_max must be >= 1");
  sums_.resize(tau_max_);
  counts_.assign(tau_max_, 0);
  if (scale_ == Scale::Physical) counts_all_.assign(tau_max_, 0);
}

void ResponseAccumulator::add_trade_week(std::span<const double> midpoints,
                                         const SignSeriesTrade& signs) {
  if (scale_ != Scale::Trade) {
    throw std::invalid_argument("trade week added to a physical accumulator");
  }
  if (signs.size() != midpoints.size()) {
    throw std::invalid_argument("sign series does not match midpoint series");
  }
  ++weeks_added_;
  const size_t n = midpoints.size();
  if (n < 2 || signs.first_defined >= n) return;

  // Hot loop: inverses are hoisted so the inner product is multiply-only.
  std::vector<double> inv(n);
  for (size_t i = 0; i < n; ++i) inv[i] = 1.0 / midpoints[i];

  const size_t t0 = std::max<size_t>(signs.first_defined, 1);
  for (uint32_t tau = 1; tau <= tau_max_; ++tau) {
    if (n < tau + 1) break;  // no anchor fits; larger tau cannot either
    const size_t t1 = n - tau;  // last admissible anchor: t - 1 + tau = n - 1
    if (t1 < t0) break;
    KahanSum& acc = sums_[tau - 1];
    if (kind_ == ReturnKind::Relative) {
      for (size_t t = t0; t <= t1; ++t) {
        const double r = (midpoints[t - 1 + tau] - midpoints[t - 1]) * inv[t - 1];
        acc.add(r * signs.signs[t]);
      }
    } else {
      for (size_t t = t0; t <= t1; ++t) {
        const double r = std::log(midpoints[t - 1 + tau] * inv[t - 1]);
        acc.add(r * signs.signs[t]);
      }
    }
    counts_[tau - 1] += t1 - t0 + 1;
  }
}

void ResponseAccumulator::add_physical_week(std::span<const double> midpoints,
                                            std::span<const int8_t> signs) {
  if (scale_ != Scale::Physical) {
    throw std::invalid_argument("physical week added to a trade accumulator");
  }
  if (signs.size() != midpoints.size()) {
    throw std::invalid_argument("sign series does not match midpoint series");
  }
  ++weeks_added_;
  const size_t n = midpoints.size();
  if (n < 2) return;

  std::vector<double> inv(n);
  for (size_t i = 0; i < n; ++i) inv[i] = 1.0 / midpoints[i];

  for (uint32_t tau = 1; tau <= tau_max_; ++tau) {
    if (n < tau + 1) break;
    const size_t t1 = n - tau;
    KahanSum& acc = sums_[tau - 1];
    uint64_t nonzero = 0;
    if (kind_ == ReturnKind::Relative) {
      for (size_t t = 1; t <= t1; ++t) {
        const int s = signs[t];
        if (s == 0) continue;
        const double r = (midpoints[t - 1 + tau] - midpoints[t - 1]) * inv[t - 1];
        acc.add(r * s);
        ++nonzero;
      }
    } else {
      for (size_t t = 1; t <= t1; ++t) {
        const int s = signs[t];
        if (s == 0) continue;
        const double r = std::log(midpoints[t - 1 + tau] * inv[t - 1]);
        acc.add(r * s);
        ++nonzero;
      }
    }
    counts_[tau - 1] += nonzero;
    counts_all_[tau - 1] += t1;  // anchors t = 1..t1, zero signs included
  }
}

ResponseCurve ResponseAccumulator::curve(ZeroHandling zero) const {
  const std::vector<uint64_t>& denom =
      (scale_ == Scale::Physical && zero == ZeroHandling::Include) ? counts_all_
                                                                   : counts_;
  if (denom.empty() || denom[0] == 0) {
    throw NoDataError("no admissible anchors at tau = 1");
  }
  ResponseCurve out;
  out.scale = scale_;
  out.return_kind = kind_;
  out.values.resize(tau_max_);
  out.counts = denom;
  for (uint32_t i = 0; i < tau_max_; ++i) {
    out.values[i] =
        denom[i] > 0 ? sums_[i].value() / static_cast<double>(denom[i])
                     : ResponseCurve::kNoData;
  }
  return out;
}

ResponseCurve response_trade(std::span<const double> midpoints,
                             const SignSeriesTrade& signs, uint32_t tau_max,
                             ReturnKind kind) {
  ResponseAccumulator acc(Scale::Trade, tau_max, kind);
  acc.add_trade_week(midpoints, signs);
  return acc.curve();
}

PhysicalResponses response_physical(std::span<const double> midpoints,
                                    std::span<const int8_t> signs,
                                    uint32_t tau_max, ReturnKind kind) {
  ResponseAccumulator acc(Scale::Physical, tau_max, kind);
  acc.add_physical_week(midpoints, signs);
  return {acc.curve(ZeroHandling::Exclude), acc.curve(ZeroHandling::Include)};
}

void SpreadAccumulator::add(std::span<const double> spreads) {
  for (double s : spreads) sum_pips_.add(s * scaling_factor_);
  n_ += spreads.size();
}

SpreadStat SpreadAccumulator::finalize(std::string symbol, int year) const {
  if (n_ == 0) throw NoDataError("no spread observations for " + symbol);
  return SpreadStat{std::move(symbol), year,
                    sum_pips_.value() / static_cast<double>(n_), n_};
}

ResponseCurve mean_curves(std::span<const ResponseCurve* const> curves) {
  if (curves.empty()) throw NoDataError("no curves to average");
  const ResponseCurve& first = *curves.front();
  for (const ResponseCurve* c : curves) {
    if (c->scale != first.scale || c->tau_max() != first.tau_max() ||
        c->return_kind != first.return_kind) {
      throw std::invalid_argument("curves do not share scale and tau grid");
    }
  }
  ResponseCurve out;
  out.scale = first.scale;
  out.return_kind = first.return_kind;
  const uint32_t tau_max = first.tau_max();
  out.values.resize(tau_max);
  out.counts.resize(tau_max);
  for (uint32_t i = 0; i < tau_max; ++i) {
    KahanSum sum;
    uint64_t members = 0;
    for (const ResponseCurve* c : curves) {
      if (c->counts[i] > 0) {
        sum.add(c->values[i]);
        ++members;
      }
    }
    out.counts[i] = members;
    out.values[i] = members > 0 ? sum.value() / static_cast<double>(members)
                                : ResponseCurve::kNoData;
  }
  return out;
}

std::vector<GroupCurve> group_average(std::vector<GroupCurveInput> inputs,
                                      int n_groups,
                                      std::vector<int>* empty_groups) {
  // Deterministic reduction order: sort members by symbol within a group.
  std::sort(inputs.begin(), inputs.end(),
            [](const GroupCurveInput& a, const GroupCurveInput& b) {
              return a.symbol < b.symbol;
            });
  std::map<int, std::vector<const GroupCurveInput*>> by_group;
  for (const GroupCurveInput& in : inputs) {
    if (in.group < 1 || in.group > n_groups) {
      throw std::invalid_argument("group index out of range for " + in.symbol);
    }
    by_group[in.group].push_back(&in);
  }

  std::vector<GroupCurve> out;
  if (empty_groups) empty_groups->clear();
  for (int g = 1; g <= n_groups; ++g) {
    auto it = by_group.find(g);
    if (it == by_group.end()) {
      if (empty_groups) empty_groups->push_back(g);
      continue;
    }
    GroupCurve gc;
    gc.group = g;
    std::vector<const ResponseCurve*> curves;
    for (const GroupCurveInput* in : it->second) {
      gc.members.push_back(in->symbol);
      curves.push_back(in->curve);
    }
    gc.curve = mean_curves(curves);
    out.push_back(std::move(gc));
  }
  return out;
}

}  // namespace fxr
