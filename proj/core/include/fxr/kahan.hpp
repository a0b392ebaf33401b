#pragma once

namespace fxr {

// Kahan compensated accumulator. Callers fix the summation order, so any
// result derived from one is bit-reproducible for a given input ordering.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }

  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace fxr
