#pragma once

#include <functional>
#include <span>
#include <vector>

#include "relesc/errors.hpp"

namespace relesc {

/// Shape-preserving piecewise-cubic Hermite interpolant (Fritsch-Carlson
/// tangent limiting). No overshoot between nodes: on any segment the value
/// stays within the bracketing node values whenever the data is locally
/// monotone there.
class PchipInterpolant {
 public:
  PchipInterpolant() = default;
  PchipInterpolant(std::vector<double> xs, std::vector<double> ys);

  /// Value at x; clamped to the end node values outside the node range.
  double operator()(double x) const;
  double derivative(double x) const;

  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  std::size_t size() const { return xs_.size(); }

 protected:
  std::size_t segment(double x) const;

  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> tangents_;
};

/// Strictly monotone map realized as a monotone cubic through its nodes.
/// Supports exact inversion over the node range.
class MonotoneMap : public PchipInterpolant {
 public:
  MonotoneMap() = default;
  MonotoneMap(std::vector<double> xs, std::vector<double> ys);

  bool increasing() const { return increasing_; }

  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }
  double y_at_x_min() const { return ys_.front(); }
  double y_at_x_max() const { return ys_.back(); }

  /// x with m(x) = y, for y within the closed range of the map.
  double inverse(double y) const;

 private:
  bool increasing_ = true;
};

/// Safeguarded bisection/secant root solve of f(x) = target on [lo, hi].
/// f must be monotone on the bracket; deterministic for identical inputs.
double invert_monotone(const std::function<double(double)>& f, double lo, double hi,
                       double target, double tol);

}  // namespace relesc
