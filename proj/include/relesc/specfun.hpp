#pragma once

#include "relesc/errors.hpp"

namespace relesc {

/// Index pair of the generalized trigonometric functions. The classical
/// definition wants p, q > 1; the defining integrals stay meaningful for any
/// p != 0 (negative p gives a bounded integrand), and are evaluated directly.
struct GtfParams {
  double p;
  double q;
};

/// Generalized Tsallis exponential: (1 + (1-lambda) x)_+^{1/(1-lambda)},
/// with the lambda -> 1 limit exp(x). The base is clamped at zero.
double tsallis_exp(double lambda, double x);

/// arcsin_{p,q}(z) = int_0^z (1 - t^q)^{-1/p} dt for z in [0, 1].
/// Returns +inf at z = 1 when the endpoint singularity is non-integrable
/// (p in (0, 1]).
double arcsin_pq(const GtfParams& gp, double z);

/// Principal-branch inverse of arcsin_pq, extended oddly to negative
/// arguments. Throws DomainError beyond the first-quarter branch.
double sin_pq(const GtfParams& gp, double z);

/// cos_pq = (1 - sin_pq^q)^{1/p}, extended evenly.
double cos_pq(const GtfParams& gp, double z);

/// arcsin_pq(1); the endpoint of the principal branch (may be +inf).
double gtf_quarter_period(const GtfParams& gp);

/// arcsinh_{p,q}(z) = int_0^z (1 + t^q)^{-1/p} dt, extended oddly.
double arcsinh_pq(const GtfParams& gp, double z);

/// Inverse of arcsinh_pq (odd). Throws DomainError when the target exceeds
/// the asymptotic range of arcsinh.
double sinh_pq(const GtfParams& gp, double z);

/// cosh_pq = (1 + sinh_pq^q)^{1/p}, extended evenly.
double cosh_pq(const GtfParams& gp, double z);

/// Asymptotic range sup_z arcsinh_pq(z); +inf when arcsinh is unbounded.
double gtf_asymptotic_range(const GtfParams& gp);

/// Lower incomplete gamma gamma(s, x) = int_0^x t^{s-1} e^{-t} dt, s > 0.
double lower_inc_gamma(double s, double x);

/// Inverse of x -> lower_inc_gamma(s, x) for y in [0, Gamma(s)).
double inv_lower_inc_gamma(double s, double y);

/// Inverse error function on (-1, 1).
double erf_inv(double y);

}  // namespace relesc
