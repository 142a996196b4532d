#pragma once

#include <cmath>
#include <limits>

#include "relesc/errors.hpp"

namespace relesc {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Oriented open interval (lo, hi); endpoints may be infinite, never NaN.
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi)) throw DomainError("interval endpoint is NaN");
    if (!(lo < hi)) throw DomainError("interval requires lo < hi");
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  bool lo_finite() const { return std::isfinite(lo_); }
  bool hi_finite() const { return std::isfinite(hi_); }
  bool finite() const { return lo_finite() && hi_finite(); }

  /// Length of the interval, +inf when unbounded.
  double length() const { return hi_ - lo_; }

  bool contains(double x) const { return x > lo_ && x < hi_; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  double lo_;
  double hi_;
};

inline Interval real_line() { return Interval(-kInf, kInf); }

}  // namespace relesc
