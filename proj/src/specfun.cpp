#include "relesc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relesc/interval.hpp"
#include "relesc/quadrature.hpp"

namespace relesc {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

void check_gtf(const GtfParams& gp) {
  if (gp.p == 0.0 || !(gp.q > 0.0) || !std::isfinite(gp.p) || !std::isfinite(gp.q))
    throw DomainError("generalized trigonometric indices need p != 0 and q > 0");
}

// Regularized lower incomplete gamma P(s, x) by series (x < s + 1) or by the
// Lentz continued fraction for the complement.
double reg_lower_gamma(double s, double x) {
  if (x <= 0.0) return 0.0;
  const double lg = std::lgamma(s);
  const double log_prefix = s * std::log(x) - x - lg;
  if (x < s + 1.0) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
      term *= x / (s + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-17) break;
    }
    return std::min(1.0, sum * std::exp(log_prefix));
  }
  // Continued fraction for Q(s, x).
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-17) break;
  }
  const double q = std::exp(log_prefix) * h;
  return std::max(0.0, 1.0 - q);
}

// Safeguarded Newton inversion of a smooth increasing function given its
// analytic derivative and a valid bracket.
template <typename F, typename DF>
double newton_invert(const F& f, const DF& df, double target, double a, double b, double x0) {
  double x = std::clamp(x0, a, b);
  double fa = f(a) - target;
  for (int iter = 0; iter < 100; ++iter) {
    const double fx = f(x) - target;
    if (std::abs(fx) <= 1e-15 * std::max(1.0, std::abs(target))) return x;
    if ((fx > 0) == (fa > 0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    const double d = df(x);
    double next = (d > 0.0 && std::isfinite(d)) ? x - fx / d : 0.5 * (a + b);
    if (!(next > a) || !(next < b)) next = 0.5 * (a + b);
    if (b - a <= 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b) + 1.0))
      return next;
    x = next;
  }
  return x;
}

}  // namespace

double tsallis_exp(double lambda, double x) {
  if (std::abs(lambda - 1.0) < 1e-6) return std::exp(x);
  const double base = 1.0 + (1.0 - lambda) * x;
  // Positive part, then the power: for lambda > 1 the exponent is negative,
  // so past the pole the expression diverges.
  if (base <= 0.0) return lambda > 1.0 ? kInf : 0.0;
  return std::pow(base, 1.0 / (1.0 - lambda));
}

double arcsin_pq(const GtfParams& gp, double z) {
  check_gtf(gp);
  if (z < 0.0 || z > 1.0) throw DomainError("arcsin_pq needs z in [0, 1]");
  if (z == 0.0) return 0.0;
  const double p = gp.p, q = gp.q;
  auto integrand = [p, q](double t) { return std::pow(1.0 - std::pow(t, q), -1.0 / p); };

  if (p < 0.0) {
    // Bounded integrand; the endpoint value is (1 - t^q)^{|1/p|} -> 0.
    return integrate(integrand, Interval(0.0, z)).value;
  }
  if (p <= 1.0 && z == 1.0) return kInf;

  const double split = 0.99;
  if (z <= split) return integrate(integrand, Interval(0.0, z)).value;

  // Near t = 1 substitute u = (1 - t^q)^{(p-1)/p}, which removes the
  // integrable singularity (p > 1 here).
  if (p <= 1.0) return integrate(integrand, Interval(0.0, z)).value;
  double head = integrate(integrand, Interval(0.0, split)).value;
  const double ex = (p - 1.0) / p;
  auto u_of_t = [q, ex](double t) { return std::pow(1.0 - std::pow(t, q), ex); };
  auto t_of_u = [p, q, ex](double u) {
    return std::pow(1.0 - std::pow(u, 1.0 / ex), 1.0 / q);
  };
  const double ua = u_of_t(z);
  const double ub = u_of_t(split);
  if (ua >= ub) return head;
  auto tail = [&](double u) {
    const double t = t_of_u(u);
    return (p / ((p - 1.0) * q)) * std::pow(t, 1.0 - q);
  };
  return head + integrate(tail, Interval(ua, ub)).value;
}

double gtf_quarter_period(const GtfParams& gp) {
  check_gtf(gp);
  if (gp.p > 0.0 && gp.p <= 1.0) return kInf;
  return arcsin_pq(gp, 1.0);
}

double sin_pq(const GtfParams& gp, double z) {
  check_gtf(gp);
  if (z < 0.0) return -sin_pq(gp, -z);
  if (z == 0.0) return 0.0;
  const double zstar = gtf_quarter_period(gp);
  const double slack = 1e-12 * std::max(1.0, std::isfinite(zstar) ? zstar : 1.0);
  if (std::isfinite(zstar) && z > zstar + slack)
    throw DomainError("sin_pq argument beyond the principal branch");
  if (std::isfinite(zstar) && z >= zstar) return 1.0;

  // Bracket in s, then safeguarded Newton with the analytic derivative
  // arcsin'(s) = (1 - s^q)^{-1/p}.
  double b = 1.0;
  if (!std::isfinite(zstar)) {
    b = 0.5;
    while (arcsin_pq(gp, b) < z && b < 1.0 - 1e-15) b = 0.5 * (1.0 + b);
  }
  const double p = gp.p, q = gp.q;
  auto f = [&](double s) { return arcsin_pq(gp, s); };
  auto df = [p, q](double s) { return std::pow(1.0 - std::pow(s, q), -1.0 / p); };
  const double seed = std::isfinite(zstar) ? z / zstar : 0.5 * b;
  return newton_invert(f, df, z, 0.0, b, seed);
}

double cos_pq(const GtfParams& gp, double z) {
  const double s = sin_pq(gp, std::abs(z));
  return std::pow(1.0 - std::pow(s, gp.q), 1.0 / gp.p);
}

double arcsinh_pq(const GtfParams& gp, double z) {
  check_gtf(gp);
  if (z < 0.0) return -arcsinh_pq(gp, -z);
  if (z == 0.0) return 0.0;
  const double p = gp.p, q = gp.q;
  auto integrand = [p, q](double t) { return std::pow(1.0 + std::pow(t, q), -1.0 / p); };
  if (std::isinf(z)) {
    const double s = q / p;
    if (!(s > 1.0)) return kInf;
    // Tail: substitute u = t^{1-s}; the integrand (1 + t^{-q})^{-1/p} is
    // then smooth and bounded down to u = 0.
    const double A = 2.0;
    const double head = integrate(integrand, Interval(0.0, A)).value;
    auto tail = [p, q, s](double u) {
      const double t = std::pow(u, 1.0 / (1.0 - s));
      return std::pow(1.0 + std::pow(t, -q), -1.0 / p) / (s - 1.0);
    };
    const double tail_val = integrate(tail, Interval(0.0, std::pow(A, 1.0 - s))).value;
    return head + tail_val;
  }
  return integrate(integrand, Interval(0.0, z)).value;
}

double gtf_asymptotic_range(const GtfParams& gp) {
  check_gtf(gp);
  return arcsinh_pq(gp, kInf);
}

double sinh_pq(const GtfParams& gp, double z) {
  check_gtf(gp);
  if (z < 0.0) return -sinh_pq(gp, -z);
  if (z == 0.0) return 0.0;
  const double range = gtf_asymptotic_range(gp);
  if (std::isfinite(range) && z >= range - 1e-14 * std::max(1.0, range))
    throw DomainError("sinh_pq argument beyond the asymptotic range of arcsinh_pq");

  double b = 1.0;
  while (arcsinh_pq(gp, b) < z) {
    b *= 2.0;
    if (b > 1e300) throw DomainError("sinh_pq inversion bracket overflow");
  }
  const double p = gp.p, q = gp.q;
  auto f = [&](double s) { return arcsinh_pq(gp, s); };
  auto df = [p, q](double s) { return std::pow(1.0 + std::pow(s, q), -1.0 / p); };
  return newton_invert(f, df, z, 0.0, b, 0.5 * b);
}

double cosh_pq(const GtfParams& gp, double z) {
  const double s = sinh_pq(gp, std::abs(z));
  return std::pow(1.0 + std::pow(s, gp.q), 1.0 / gp.p);
}

double lower_inc_gamma(double s, double x) {
  if (!(s > 0.0)) throw DomainError("lower_inc_gamma needs s > 0");
  if (x < 0.0) throw DomainError("lower_inc_gamma needs x >= 0");
  return reg_lower_gamma(s, x) * std::tgamma(s);
}

double inv_lower_inc_gamma(double s, double y) {
  if (!(s > 0.0)) throw DomainError("inv_lower_inc_gamma needs s > 0");
  const double gs = std::tgamma(s);
  if (y < 0.0 || y >= gs) throw DomainError("inv_lower_inc_gamma needs 0 <= y < Gamma(s)");
  if (y == 0.0) return 0.0;
  const double pt = y / gs;

  // Median approximation seed, then safeguarded Newton on P(s, .).
  double x = s * std::pow(1.0 - 1.0 / (9.0 * s), 3.0);
  if (!(x > 0.0)) x = s;
  double b = std::max(x, 1.0);
  while (reg_lower_gamma(s, b) < pt) {
    b *= 2.0;
    if (b > 1e300) throw DomainError("inv_lower_inc_gamma target too close to Gamma(s)");
  }
  const double lg = std::lgamma(s);
  auto f = [&](double t) { return reg_lower_gamma(s, t); };
  auto df = [s, lg](double t) {
    return t > 0.0 ? std::exp((s - 1.0) * std::log(t) - t - lg) : kInf;
  };
  return newton_invert(f, df, pt, 0.0, b, std::min(x, b));
}

double erf_inv(double y) {
  if (!(y > -1.0) || !(y < 1.0)) throw DomainError("erf_inv needs |y| < 1");
  if (y == 0.0) return 0.0;

  // Short polynomial seed, then Newton to full precision.
  double w = -std::log((1.0 - y) * (1.0 + y));
  double x;
  if (w < 5.0) {
    w -= 2.5;
    x = 2.81022636e-08;
    x = 3.43273939e-07 + x * w;
    x = -3.5233877e-06 + x * w;
    x = -4.39150654e-06 + x * w;
    x = 0.00021858087 + x * w;
    x = -0.00125372503 + x * w;
    x = -0.00417768164 + x * w;
    x = 0.246640727 + x * w;
    x = 1.50140941 + x * w;
    x *= y;
  } else {
    w = std::sqrt(w) - 3.0;
    x = -0.000200214257;
    x = 0.000100950558 + x * w;
    x = 0.00134934322 + x * w;
    x = -0.00367342844 + x * w;
    x = 0.00573950773 + x * w;
    x = -0.0076224613 + x * w;
    x = 0.00943887047 + x * w;
    x = 1.00167406 + x * w;
    x = 2.83297682 + x * w;
    x *= y;
  }
  for (int i = 0; i < 3; ++i) {
    const double err = std::erf(x) - y;
    x -= err * 0.5 * kSqrtPi * std::exp(x * x);
  }
  return x;
}

}  // namespace relesc
