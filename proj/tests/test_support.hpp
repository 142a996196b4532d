#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "relesc/density.hpp"
#include "relesc/functionals.hpp"
#include "relesc/quadrature.hpp"

namespace relesc::testing {

inline bool close_rel(double a, double b, double tol) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

inline bool close_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Gauss hypergeometric series 2F1(a, b; c; w), |w| < 1, summed to tol.
inline double hyp2f1(double a, double b, double c, double w, double tol = 1e-14) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < 100000; ++n) {
    term *= (a + n) * (b + n) / (c + n) * w / (n + 1);
    sum += term;
    if (std::abs(term) < tol * std::abs(sum)) break;
  }
  return sum;
}

/// Series oracle for arcsin_{p,q}: z 2F1(1/p, 1/q; 1 + 1/q; z^q).
inline double arcsin_pq_series(double p, double q, double z, double tol = 1e-14) {
  return z * hyp2f1(1.0 / p, 1.0 / q, 1.0 + 1.0 / q, std::pow(z, q), tol);
}

/// Closed-form transform of the exponential pair f = a e^{-a x}, h = e^{-x}:
/// the transformed density a^alpha [a^alpha (alpha/a* - 1) y + 1]^{alpha(a-1)/(a+alpha-a alpha)}
/// on (0, y_f) with y_f = 1 / (a^{alpha-1} (a + alpha - a alpha)) when alpha < a*.
struct ExpPairOracle {
  double a;
  double alpha;

  double exponent() const { return alpha * (a - 1.0) / (a + alpha - a * alpha); }
  double support_length() const {
    const double c = a + alpha - a * alpha;
    if (c <= 0.0) return kInf;
    return std::pow(a, 1.0 - alpha) / c;
  }
  double pdf(double y) const {
    const double astar = a / (a - 1.0);
    if (std::abs(alpha - astar) < 1e-12) {
      // The change of variable degenerates to a scaling: exponential output.
      return std::pow(a, alpha) *
             std::exp(-alpha * (a - 1.0) * std::pow(a, alpha - 1.0) * y);
    }
    const double inner = std::pow(a, alpha) * (alpha / astar - 1.0) * y + 1.0;
    if (inner <= 0.0) return 0.0;
    return std::pow(a, alpha) * std::pow(inner, exponent());
  }
};

/// Pre-existing (non scale-invariant) relative Fisher baselines, used in
/// tests only for comparison.
inline double fisher_rel_baseline(const DensityModel& f, const DensityModel& g) {
  return integrate(
             [&](double x) {
               const double v = f.pdf(x);
               if (v <= 0.0) return 0.0;
               const double d = f.log_deriv(x) - g.log_deriv(x);
               return v * d * d;
             },
             f.support())
      .value;
}

inline double fisher_hammad_baseline(const DensityModel& f, const DensityModel& g,
                                     double alpha) {
  return integrate(
             [&](double x) {
               const double pf = f.pdf(x);
               const double pg = g.pdf(x);
               if (pf <= 0.0 || pg <= 0.0) return 0.0;
               const double d = f.log_deriv(x) - g.log_deriv(x);
               return std::pow(pf, alpha) * std::pow(pg, 1.0 - alpha) * d * d;
             },
             f.support())
      .value;
}

}  // namespace relesc::testing
