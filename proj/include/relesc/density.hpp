#pragma once

#include <functional>
#include <memory>
#include <string>

#include "relesc/interval.hpp"

namespace relesc {

/// A one-dimensional probability density with a single-interval support,
/// strictly positive on the open support. Analytic catalog entries carry a
/// derivative and a logarithmic derivative; grid-backed ones may not.
/// Immutable value type; cheap to copy.
class DensityModel {
 public:
  using Fn = std::function<double(double)>;

  DensityModel() : support_(0.0, 1.0) {}
  DensityModel(Interval support, Fn pdf, Fn log_deriv, Fn deriv, std::string kind,
               Fn log_pdf = {});

  /// Density value; zero outside the open support.
  double pdf(double x) const {
    if (!support_.contains(x)) return 0.0;
    return pdf_(x);
  }

  /// log pdf; -inf outside the support. Analytic where available, which
  /// keeps negative powers of deep tails finite where the pdf underflows.
  double log_pdf(double x) const;

  const Interval& support() const { return support_; }
  const std::string& kind() const { return kind_; }

  bool has_log_deriv() const { return static_cast<bool>(log_deriv_); }
  bool has_deriv() const { return static_cast<bool>(deriv_) || has_log_deriv(); }

  /// d/dx log pdf at an interior point.
  double log_deriv(double x) const;
  /// d/dx pdf at an interior point.
  double deriv(double x) const;

 private:
  Interval support_;
  Fn pdf_;
  Fn log_pdf_;
  Fn log_deriv_;
  Fn deriv_;
  std::string kind_;
};

DensityModel make_exponential(double a);
DensityModel make_gaussian();
DensityModel make_uniform(double lo, double hi);
DensityModel make_power(double eta);

/// Stretched Gaussian a_{p,lambda} exp_{2-lambda}(-|x|^{p_star}); the
/// normalization constant is obtained by quadrature. Compact support
/// [-(lambda-1)^{-1/p*}, +] when lambda > 1, the whole line otherwise.
/// Requires lambda > 1/(1 + p_star) for normalizability.
DensityModel make_stretched_gaussian(double p_star, double lambda);

/// Endpoints of the support of the stretched Gaussian, computed analytically
/// from the zero of the clamped Tsallis exponential base.
Interval stretched_gaussian_support(double p_star, double lambda);

/// Scaling transformation x -> r f(r x); support endpoints divide by r.
DensityModel scale(const DensityModel& d, double r);

/// Restriction of d to iv, renormalized. The log-derivative is unchanged.
DensityModel truncate(const DensityModel& d, const Interval& iv);

/// Normalized two-component mixture w d1 + (1 - w) d2 on a common support.
DensityModel mix(const DensityModel& d1, const DensityModel& d2, double w);

/// Exponential tilt d(x) e^{eps tanh(x - x0)} / Z; keeps support and tails.
DensityModel tilt(const DensityModel& d, double eps, double x0 = 0.0);

/// Holder conjugate p* = p / (p - 1).
double holder_conjugate(double p);

}  // namespace relesc
