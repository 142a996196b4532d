#include "relesc/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace relesc {

namespace {

// Fritsch-Carlson tangents: weighted harmonic mean of adjacent secant
// slopes, zeroed whenever the slopes disagree in sign or vanish.
std::vector<double> pchip_tangents(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  std::vector<double> h(n - 1), s(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    s[i] = (y[i + 1] - y[i]) / h[i];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (s[i - 1] == 0.0 || s[i] == 0.0 || (s[i - 1] > 0) != (s[i] > 0)) {
      d[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
    }
  }
  // One-sided endpoint tangents, clipped to preserve shape.
  auto endpoint = [](double h0, double h1, double s0, double s1) {
    double d0 = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if (d0 * s0 <= 0.0)
      d0 = 0.0;
    else if (s0 * s1 <= 0.0 && std::abs(d0) > 3.0 * std::abs(s0))
      d0 = 3.0 * s0;
    return d0;
  };
  d[0] = endpoint(h[0], h[1], s[0], s[1]);
  d[n - 1] = endpoint(h[n - 2], h[n - 3], s[n - 2], s[n - 3]);
  return d;
}

}  // namespace

PchipInterpolant::PchipInterpolant(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size() || xs_.size() < 2)
    throw InconsistentGrid("interpolant needs >= 2 nodes with matching lengths");
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
    if (!(xs_[i] < xs_[i + 1]))
      throw InconsistentGrid("interpolant abscissae must be strictly increasing");
  for (double v : xs_)
    if (!std::isfinite(v)) throw InconsistentGrid("interpolant abscissa not finite");
  for (double v : ys_)
    if (!std::isfinite(v)) throw InconsistentGrid("interpolant ordinate not finite");
  tangents_ = pchip_tangents(xs_, ys_);
}

std::size_t PchipInterpolant::segment(double x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  return std::min(i, xs_.size() - 2);
}

double PchipInterpolant::operator()(double x) const {
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  const std::size_t i = segment(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * ys_[i] + h10 * h * tangents_[i] + h01 * ys_[i + 1] + h11 * h * tangents_[i + 1];
}

double PchipInterpolant::derivative(double x) const {
  if (x <= xs_.front()) x = xs_.front();
  if (x >= xs_.back()) x = xs_.back();
  const std::size_t i = segment(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double t2 = t * t;
  const double dh00 = (6 * t2 - 6 * t) / h;
  const double dh10 = 3 * t2 - 4 * t + 1;
  const double dh01 = (-6 * t2 + 6 * t) / h;
  const double dh11 = 3 * t2 - 2 * t;
  return dh00 * ys_[i] + dh10 * tangents_[i] + dh01 * ys_[i + 1] + dh11 * tangents_[i + 1];
}

MonotoneMap::MonotoneMap(std::vector<double> xs, std::vector<double> ys)
    : PchipInterpolant(std::move(xs), std::move(ys)) {
  increasing_ = ys_.back() > ys_.front();
  for (std::size_t i = 0; i + 1 < ys_.size(); ++i) {
    const bool up = ys_[i + 1] > ys_[i];
    if (ys_[i + 1] == ys_[i] || up != increasing_)
      throw InconsistentGrid("map ordinates must be strictly monotone");
  }
}

double MonotoneMap::inverse(double y) const {
  const double y_lo = increasing_ ? ys_.front() : ys_.back();
  const double y_hi = increasing_ ? ys_.back() : ys_.front();
  const double slack = 1e-12 * (std::abs(y_lo) + std::abs(y_hi) + 1.0);
  if (y < y_lo - slack || y > y_hi + slack)
    throw TargetOutOfRange("inverse target outside map range");
  y = std::clamp(y, y_lo, y_hi);

  // Locate the bracketing segment on the ordinates.
  std::size_t lo = 0, hi = ys_.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    const bool left = increasing_ ? (y < ys_[mid]) : (y > ys_[mid]);
    (left ? hi : lo) = mid;
  }
  if (y == ys_[lo]) return xs_[lo];
  if (y == ys_[hi]) return xs_[hi];

  return invert_monotone([this](double x) { return (*this)(x); }, xs_[lo], xs_[hi], y, 1e-15);
}

double invert_monotone(const std::function<double(double)>& f, double lo, double hi,
                       double target, double tol) {
  if (!(tol > 0.0)) throw DomainError("inversion tolerance must be positive");
  if (!(lo < hi)) throw DomainError("inversion bracket requires lo < hi");
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw TargetOutOfRange("target not bracketed");

  const double fscale = std::max(1.0, std::abs(target));
  double a = lo, b = hi, fa = flo, fb = fhi;
  for (int iter = 0; iter < 200; ++iter) {
    // Secant proposal, safeguarded to the current bracket interior.
    double x = b - fb * (b - a) / (fb - fa);
    const double mid = 0.5 * (a + b);
    if (!std::isfinite(x) || x <= a || x >= b) x = mid;
    // Alternate with bisection so the bracket provably shrinks.
    if (iter % 2 == 1) x = mid;
    const double fx = f(x) - target;
    const double xscale = std::abs(a) + std::abs(b) + 1.0;
    if (std::abs(fx) <= tol * fscale ||
        b - a <= 4.0 * std::numeric_limits<double>::epsilon() * xscale)
      return x;
    if ((fx > 0) == (fa > 0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace relesc
