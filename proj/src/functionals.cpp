#include "relesc/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "relesc/numerics.hpp"
#include "relesc/quadrature.hpp"

namespace relesc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Integrate, translating a diverging quadrature into the functional-specific
// error. The tail-growth flag and runaway partial values signal a genuinely
// divergent integral rather than a hard integrand.
template <typename DivergentT>
Evaluated integrate_as(const std::function<double(double)>& g, const Interval& iv,
                       const char* what) {
  try {
    const QuadResult r = integrate(g, iv);
    return {r.value, r.abs_error_estimate};
  } catch (const NonConvergence& e) {
    if (e.tail_growth || !std::isfinite(e.value_estimate) ||
        std::abs(e.value_estimate) > 1e12)
      throw DivergentT(std::string(what) + " integral diverges");
    throw;
  } catch (const NonFiniteEvaluand&) {
    throw DivergentT(std::string(what) + " integrand is unbounded");
  }
}

// c * lp with the convention 0 * (+-inf) = 0; combining exponents of
// log-pdfs keeps deep tails finite where the pdf itself underflows.
double scaled_log(double lp, double c) {
  if (c == 0.0) return 0.0;
  return c * lp;
}

// Probe points spread over iv (compactified when unbounded).
std::vector<double> probe_points(const Interval& iv, int n) {
  std::vector<double> xs;
  xs.reserve(n);
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / (n + 1);
    double x;
    if (iv.finite())
      x = iv.lo() + t * iv.length();
    else if (iv.lo_finite())
      x = iv.lo() + t / (1.0 - t);
    else if (iv.hi_finite())
      x = iv.hi() - (1.0 - t) / t;
    else
      x = (2.0 * t - 1.0) / (1.0 - (2.0 * t - 1.0) * (2.0 * t - 1.0));
    xs.push_back(x);
  }
  return xs;
}

}  // namespace

double deviation(const DensityModel& d, double p) {
  if (std::isinf(p)) {
    const Interval& s = d.support();
    return std::max(std::abs(s.lo()), std::abs(s.hi()));
  }
  if (p < 0.0) throw DomainError("deviation needs p >= 0");
  if (p == 0.0) {
    const Evaluated e = integrate_as<DivergentMoment>(
        [&d](double x) { return d.pdf(x) * std::log(std::abs(x)); }, d.support(),
        "log-moment");
    return std::exp(e.value);
  }
  const Evaluated mu = integrate_as<DivergentMoment>(
      [&d, p](double x) { return std::pow(std::abs(x), p) * d.pdf(x); }, d.support(),
      "absolute moment");
  return std::pow(mu.value, 1.0 / p);
}

double shannon_entropy(const DensityModel& d) {
  const Evaluated e = integrate_as<DivergentEntropy>(
      [&d](double x) {
        const double lp = d.log_pdf(x);
        if (!std::isfinite(lp)) return 0.0;
        const double v = std::exp(lp);
        return v > 0.0 ? -v * lp : 0.0;
      },
      d.support(), "Shannon entropy");
  return e.value;
}

double renyi_entropy_power(const DensityModel& d, double lambda) {
  if (std::abs(lambda - 1.0) < 1e-9) return std::exp(shannon_entropy(d));
  const Evaluated e = integrate_as<DivergentEntropy>(
      [&d, lambda](double x) { return std::exp(scaled_log(d.log_pdf(x), lambda)); },
      d.support(), "Renyi entropy");
  if (!(e.value > 0.0)) throw DivergentEntropy("Renyi integral vanished");
  return std::exp(std::log(e.value) / (1.0 - lambda));
}

double tsallis_entropy(const DensityModel& d, double lambda) {
  if (std::abs(lambda - 1.0) < 1e-9) return shannon_entropy(d);
  const Evaluated e = integrate_as<DivergentEntropy>(
      [&d, lambda](double x) { return std::exp(scaled_log(d.log_pdf(x), lambda)); },
      d.support(), "Tsallis entropy");
  return (1.0 - e.value) / (lambda - 1.0);
}

double fisher_plam(const DensityModel& d, double p, double lambda) {
  if (lambda == 0.0) throw DomainError("Fisher information needs lambda != 0");
  if (!(p >= 1.0)) throw DomainError("Fisher information needs p >= 1");
  if (p == 1.0 && d.kind().rfind("grid", 0) == 0)
    throw DomainError("p = 1 Fisher information requires an analytic density");
  if (!d.has_deriv()) throw MissingDerivative("Fisher information needs a derivative");
  const double fexp = 1.0 + p * (lambda - 1.0);
  const Evaluated e = integrate_as<DivergentFisher>(
      [&d, p, fexp](double x) {
        const double lp = d.log_pdf(x);
        if (lp == -kInf) return 0.0;
        const double ld = d.log_deriv(x);
        if (ld == 0.0) return 0.0;
        return std::exp(scaled_log(lp, fexp) + p * std::log(std::abs(ld)));
      },
      d.support(), "Fisher");
  if (e.value == 0.0) return 0.0;
  return std::pow(e.value, 1.0 / (p * lambda));
}

Evaluated k_xi_est(const DensityModel& f, const DensityModel& h, double xi) {
  require_common_support(f, h);
  return integrate_as<DivergentDivergence>(
      [&f, &h, xi](double x) {
        const double e = scaled_log(f.log_pdf(x), xi) + scaled_log(h.log_pdf(x), 1.0 - xi);
        if (std::isnan(e)) return kInf;  // 0^negative against 0^positive
        return std::exp(e);
      },
      f.support(), "K_xi");
}

double k_xi(const DensityModel& f, const DensityModel& h, double xi) {
  return k_xi_est(f, h, xi).value;
}

Evaluated kl_div_est(const DensityModel& f, const DensityModel& h) {
  require_common_support(f, h);
  return integrate_as<DivergentDivergence>(
      [&f, &h](double x) {
        const double lp1 = f.log_pdf(x);
        if (lp1 == -kInf) return 0.0;
        const double lp2 = h.log_pdf(x);
        if (lp2 == -kInf) return kInf;
        return std::exp(lp1) * (lp1 - lp2);
      },
      f.support(), "Kullback-Leibler");
}

double kl_div(const DensityModel& f, const DensityModel& h) { return kl_div_est(f, h).value; }

double renyi_div(const DensityModel& f, const DensityModel& h, double xi) {
  if (std::abs(xi - 1.0) < 1e-9) return kl_div(f, h);
  const double k = k_xi(f, h, xi);
  if (!(k > 0.0)) throw DivergentDivergence("K_xi vanished");
  return std::log(k) / (xi - 1.0);
}

RelFisher relative_fisher(const DensityModel& f, const DensityModel& h, double p,
                          double lambda) {
  require_common_support(f, h);
  if (lambda == 0.0) throw DomainError("relative Fisher divergence needs lambda != 0");
  if (!(p > 1.0)) throw DomainError("relative Fisher divergence needs p > 1");
  const double fexp = 1.0 + p * (lambda - 1.0);
  const double hexp = -lambda * p;
  const Evaluated e = integrate_as<DivergentFisher>(
      [&, p, fexp, hexp](double x) {
        const double w = scaled_log(f.log_pdf(x), fexp) + scaled_log(h.log_pdf(x), hexp);
        if (std::isnan(w)) return kInf;
        if (w == -kInf) return 0.0;
        const double diff = f.log_deriv(x) - h.log_deriv(x);
        if (diff == 0.0) return 0.0;
        return std::exp(w + p * std::log(std::abs(diff)));
      },
      f.support(), "relative Fisher");
  RelFisher out;
  out.F = e.value;
  out.abs_err = e.abs_err;
  out.phi = e.value == 0.0 ? 0.0 : std::pow(e.value, 1.0 / (p * lambda));
  return out;
}

RelCumMoment relative_cumulative_moment(const DensityModel& f, const DensityModel& h, double p,
                                        double alpha) {
  require_common_support(f, h);
  if (!(p > 0.0)) throw DomainError("relative cumulative moment needs p > 0");
  const Interval supp = f.support();

  auto w = [&f, &h, alpha](double x) {
    const double e =
        scaled_log(f.log_pdf(x), 1.0 - alpha) + scaled_log(h.log_pdf(x), alpha);
    if (std::isnan(e)) return kInf;
    return std::exp(e);
  };

  // Node positions follow the mass of f (the outer weight); the cumulative of
  // w is interpolated there and extended live past the node range.
  CumulativeOptions fopt;
  fopt.n_nodes = 513;
  const CumulativeMap fmass = cumulative_map([&f](double x) { return f.pdf(x); }, supp, fopt);
  std::vector<double> nodes(fmass.map.xs().begin(), fmass.map.xs().end());
  CumulativeMap wmap;
  try {
    wmap = cumulative_on_nodes(w, supp, nodes);
  } catch (const NonConvergence&) {
    throw DivergentMoment("cumulative weight integral diverges in the interior");
  }
  if (!wmap.lower_anchored)
    throw DivergentMoment("cumulative weight integral diverges at the lower endpoint");

  // Exact Y(x): cumulative node value plus a short quadrature, so no
  // interpolation error enters the moment.
  auto Y = [&, supp](double x) { return exact_cumulative(wmap, w, supp, x); };

  const Evaluated e = integrate_as<DivergentMoment>(
      [&](double x) {
        const double v = f.pdf(x);
        if (v <= 0.0) return 0.0;
        return std::pow(std::abs(Y(x)), p) * v;
      },
      supp, "relative cumulative moment");

  RelCumMoment out;
  out.mu = e.value;
  out.abs_err = e.abs_err;
  if (alpha != 0.0) out.sigma = std::pow(e.value, 1.0 / (p * alpha));
  return out;
}

double fisher_shannon(const DensityModel& d) {
  return std::exp(shannon_entropy(d)) * fisher_plam(d, 2.0, 1.0);
}

namespace {

// Sum of per-segment adaptive integrals over the node grid.
double segment_sum(const GridDensity& gd, const std::function<double(double)>& integrand) {
  const auto nodes = gd.nodes();
  QuadOptions opt = default_quad_options();
  opt.rel_tol = 1e-9;
  opt.abs_tol = 1e-14;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    acc += integrate(integrand, Interval(nodes[i], nodes[i + 1]), opt).value;
  return acc;
}

}  // namespace

double shannon_entropy(const GridDensity& gd) {
  return segment_sum(gd, [&gd](double y) {
    const double v = gd.pdf(y);
    return v > 0.0 ? -v * std::log(v) : 0.0;
  });
}

double fisher_plam(const GridDensity& gd, double p, double lambda) {
  if (lambda == 0.0) throw DomainError("Fisher information needs lambda != 0");
  if (!(p > 1.0)) throw DomainError("grid densities support p > 1 Fisher only");
  const double fexp = 1.0 + p * (lambda - 1.0);
  const double val = segment_sum(gd, [&gd, p, fexp](double y) {
    const double lp = gd.log_pdf(y);
    if (lp == -kInf) return 0.0;
    const double ld = gd.log_deriv(y);
    if (ld == 0.0) return 0.0;
    return std::exp(scaled_log(lp, fexp) + p * std::log(std::abs(ld)));
  });
  return val == 0.0 ? 0.0 : std::pow(val, 1.0 / (p * lambda));
}

double fisher_shannon(const GridDensity& gd) {
  return std::exp(shannon_entropy(gd)) * fisher_plam(gd, 2.0, 1.0);
}

GridDensity gauss_convolve(const DensityModel& d, double tau, int n_nodes) {
  if (!(tau > 0.0)) throw DomainError("convolution needs tau > 0");
  const double sd = std::sqrt(tau);
  const Interval s = d.support();
  const Interval ext(s.lo_finite() ? s.lo() - 8.0 * sd : -kInf,
                     s.hi_finite() ? s.hi() + 8.0 * sd : kInf);
  const double norm = 1.0 / std::sqrt(2.0 * kPi * tau);
  const double window = 10.0 * sd;

  auto conv = [d, tau, norm, window, s](double y) {
    const double a = std::max(s.lo(), y - window);
    const double b = std::min(s.hi(), y + window);
    if (!(a < b)) return 0.0;
    const QuadResult r = integrate(
        [&](double x) {
          const double v = d.pdf(x);
          if (v == 0.0) return 0.0;
          const double u = y - x;
          return v * norm * std::exp(-u * u / (2.0 * tau));
        },
        Interval(a, b));
    return std::max(r.value, 0.0);
  };
  auto conv_deriv = [d, tau, norm, window, s](double y) {
    const double a = std::max(s.lo(), y - window);
    const double b = std::min(s.hi(), y + window);
    if (!(a < b)) return 0.0;
    return integrate(
               [&](double x) {
                 const double v = d.pdf(x);
                 if (v == 0.0) return 0.0;
                 const double u = y - x;
                 return -v * norm * (u / tau) * std::exp(-u * u / (2.0 * tau));
               },
               Interval(a, b))
        .value;
  };

  GridDensity out = grid_density_from_pdf(conv, ext, n_nodes, "gaussconv(" + d.kind() + ")");
  out.set_exact(conv, conv_deriv);
  return out;
}

void require_common_support(const DensityModel& f, const DensityModel& h) {
  const Interval& a = f.support();
  const Interval& b = h.support();
  auto same = [](double u, double v) {
    if (std::isinf(u) || std::isinf(v)) return u == v;
    return std::abs(u - v) <= 1e-9 * std::max({1.0, std::abs(u), std::abs(v)});
  };
  if (!same(a.lo(), b.lo()) || !same(a.hi(), b.hi()))
    throw SupportMismatch("densities must share their support");
}

bool densities_identical(const DensityModel& f, const DensityModel& h) {
  const Interval& a = f.support();
  const Interval& b = h.support();
  if (!(std::isinf(a.lo()) ? a.lo() == b.lo() : std::abs(a.lo() - b.lo()) < 1e-12) ||
      !(std::isinf(a.hi()) ? a.hi() == b.hi() : std::abs(a.hi() - b.hi()) < 1e-12))
    return false;
  for (double x : probe_points(a, 33)) {
    const double p1 = f.pdf(x);
    const double p2 = h.pdf(x);
    if (p1 <= 0.0 && p2 <= 0.0) continue;
    if (p1 <= 0.0 || p2 <= 0.0) return false;
    if (std::abs(std::log(p1) - std::log(p2)) > 1e-9) return false;
  }
  return true;
}

}  // namespace relesc
