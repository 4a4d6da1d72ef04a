#pragma once

#include <cmath>

namespace skewflow {

/// Neumaier's variant of Kahan summation. The weighted sums in the summation
/// criteria mix terms spanning many orders of magnitude; the compensated
/// total is also independent of how the terms were produced.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  /// Multiplies the running total by a positive factor.
  void scale(double f) noexcept {
    sum_ *= f;
    comp_ *= f;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace skewflow
