#include "relesc/density.hpp"

#include <cmath>

#include "relesc/quadrature.hpp"
#include "relesc/specfun.hpp"

namespace relesc {

namespace {
constexpr double kInvSqrtPi = 0.56418958354775628695;
}

DensityModel::DensityModel(Interval support, Fn pdf, Fn log_deriv, Fn deriv, std::string kind,
                           Fn log_pdf)
    : support_(support),
      pdf_(std::move(pdf)),
      log_pdf_(std::move(log_pdf)),
      log_deriv_(std::move(log_deriv)),
      deriv_(std::move(deriv)),
      kind_(std::move(kind)) {
  if (!pdf_) throw DomainError("density needs a pdf");
}

double DensityModel::log_pdf(double x) const {
  if (!support_.contains(x)) return -kInf;
  if (log_pdf_) return log_pdf_(x);
  const double v = pdf_(x);
  return v > 0.0 ? std::log(v) : -kInf;
}

double DensityModel::log_deriv(double x) const {
  if (log_deriv_) return log_deriv_(x);
  if (deriv_) return deriv_(x) / pdf(x);
  throw MissingDerivative("density '" + kind_ + "' has no derivative");
}

double DensityModel::deriv(double x) const {
  if (deriv_) return deriv_(x);
  if (log_deriv_) return log_deriv_(x) * pdf(x);
  throw MissingDerivative("density '" + kind_ + "' has no derivative");
}

DensityModel make_exponential(double a) {
  if (!(a > 0.0)) throw DomainError("exponential rate must be positive");
  return DensityModel(
      Interval(0.0, kInf), [a](double x) { return a * std::exp(-a * x); },
      [a](double) { return -a; }, [a](double x) { return -a * a * std::exp(-a * x); },
      "exp:a=" + std::to_string(a), [a](double x) { return std::log(a) - a * x; });
}

DensityModel make_gaussian() {
  // Reference Gaussian with variance 1/2: exp(-x^2)/sqrt(pi).
  return DensityModel(
      real_line(), [](double x) { return kInvSqrtPi * std::exp(-x * x); },
      [](double x) { return -2.0 * x; },
      [](double x) { return -2.0 * x * kInvSqrtPi * std::exp(-x * x); }, "gauss",
      [](double x) { return std::log(kInvSqrtPi) - x * x; });
}

DensityModel make_uniform(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("uniform needs finite lo < hi");
  const double v = 1.0 / (hi - lo);
  return DensityModel(
      Interval(lo, hi), [v](double) { return v; }, [](double) { return 0.0; },
      [](double) { return 0.0; },
      "uniform:" + std::to_string(lo) + "," + std::to_string(hi),
      [v](double) { return std::log(v); });
}

DensityModel make_power(double eta) {
  if (!(eta > -1.0)) throw DomainError("power density needs eta > -1");
  return DensityModel(
      Interval(0.0, 1.0), [eta](double x) { return (eta + 1.0) * std::pow(x, eta); },
      [eta](double x) { return eta / x; },
      [eta](double x) { return (eta + 1.0) * eta * std::pow(x, eta - 1.0); },
      "power:eta=" + std::to_string(eta),
      [eta](double x) { return std::log(eta + 1.0) + eta * std::log(x); });
}

Interval stretched_gaussian_support(double p_star, double lambda) {
  if (!(p_star > 0.0)) throw DomainError("stretched Gaussian needs p* > 0");
  if (lambda > 1.0) {
    const double edge = std::pow(lambda - 1.0, -1.0 / p_star);
    return Interval(-edge, edge);
  }
  return real_line();
}

DensityModel make_stretched_gaussian(double p_star, double lambda) {
  if (!(p_star > 0.0)) throw DomainError("stretched Gaussian needs p* > 0");
  if (!(lambda > 1.0 / (1.0 + p_star)))
    throw NotNormalizable("stretched Gaussian needs lambda > 1/(1+p*)");
  const Interval supp = stretched_gaussian_support(p_star, lambda);

  auto shape = [p_star, lambda](double x) {
    return tsallis_exp(2.0 - lambda, -std::pow(std::abs(x), p_star));
  };
  double z;
  try {
    z = integrate(shape, supp).value;
  } catch (const NonConvergence&) {
    throw NotNormalizable("stretched Gaussian normalization integral diverges");
  }
  if (!(z > 0.0) || !std::isfinite(z))
    throw NotNormalizable("stretched Gaussian normalization integral diverges");
  const double a = 1.0 / z;

  // d/dx log g = -p* |x|^{p*-1} sign(x) / (1 - (lambda-1) |x|^{p*}).
  auto ld = [p_star, lambda](double x) {
    const double ax = std::abs(x);
    const double num = -p_star * std::pow(ax, p_star - 1.0) * (x >= 0.0 ? 1.0 : -1.0);
    const double den = 1.0 - (lambda - 1.0) * std::pow(ax, p_star);
    return num / den;
  };
  auto pdf = [a, shape](double x) { return a * shape(x); };
  auto lp = [a, p_star, lambda](double x) {
    const double t = -std::pow(std::abs(x), p_star);
    double ls;
    if (std::abs(lambda - 1.0) < 1e-6) {
      ls = t;
    } else {
      const double base = 1.0 + (lambda - 1.0) * t;
      if (base <= 0.0) return -kInf;
      ls = std::log(base) / (lambda - 1.0);
    }
    return std::log(a) + ls;
  };
  return DensityModel(
      supp, pdf, ld, [pdf, ld](double x) { return pdf(x) * ld(x); },
      "sg:pstar=" + std::to_string(p_star) + ",lambda=" + std::to_string(lambda), lp);
}

DensityModel scale(const DensityModel& d, double r) {
  if (!(r > 0.0)) throw DomainError("scaling factor must be positive");
  if (r == 1.0) return d;
  const Interval s = d.support();
  Interval scaled(s.lo_finite() ? s.lo() / r : s.lo(), s.hi_finite() ? s.hi() / r : s.hi());
  DensityModel::Fn ld, dv;
  if (d.has_log_deriv())
    ld = [d, r](double x) { return r * d.log_deriv(r * x); };
  if (d.has_deriv())
    dv = [d, r](double x) { return r * r * d.deriv(r * x); };
  return DensityModel(
      scaled, [d, r](double x) { return r * d.pdf(r * x); }, ld, dv,
      "scale:r=" + std::to_string(r) + "(" + d.kind() + ")",
      [d, r](double x) { return std::log(r) + d.log_pdf(r * x); });
}

DensityModel truncate(const DensityModel& d, const Interval& iv) {
  const Interval s = d.support();
  const Interval cut(std::max(s.lo(), iv.lo()), std::min(s.hi(), iv.hi()));
  const double z = integrate([&d](double x) { return d.pdf(x); }, cut).value;
  if (!(z > 0.0)) throw NotNormalizable("truncation leaves no mass");
  DensityModel::Fn ld, dv;
  if (d.has_log_deriv())
    ld = [d](double x) { return d.log_deriv(x); };
  if (d.has_deriv())
    dv = [d, z](double x) { return d.deriv(x) / z; };
  return DensityModel(
      cut, [d, z](double x) { return d.pdf(x) / z; }, ld, dv, "trunc(" + d.kind() + ")",
      [d, z](double x) { return d.log_pdf(x) - std::log(z); });
}

DensityModel mix(const DensityModel& d1, const DensityModel& d2, double w) {
  if (!(w > 0.0) || !(w < 1.0)) throw DomainError("mixture weight must be in (0, 1)");
  if (!(d1.support() == d2.support()))
    throw DomainError("mixture components need a common support");
  auto pdf = [d1, d2, w](double x) { return w * d1.pdf(x) + (1.0 - w) * d2.pdf(x); };
  DensityModel::Fn ld, dv;
  if (d1.has_deriv() && d2.has_deriv()) {
    dv = [d1, d2, w](double x) { return w * d1.deriv(x) + (1.0 - w) * d2.deriv(x); };
    // Component weights from log-pdfs so the ratio survives tail underflow.
    ld = [d1, d2, w](double x) {
      const double l1 = std::log(w) + d1.log_pdf(x);
      const double l2 = std::log(1.0 - w) + d2.log_pdf(x);
      const double m = std::max(l1, l2);
      if (m == -kInf) return 0.0;
      const double w1 = std::exp(l1 - m);
      const double w2 = std::exp(l2 - m);
      return (w1 * d1.log_deriv(x) + w2 * d2.log_deriv(x)) / (w1 + w2);
    };
  }
  auto lp = [d1, d2, w](double x) {
    const double l1 = std::log(w) + d1.log_pdf(x);
    const double l2 = std::log(1.0 - w) + d2.log_pdf(x);
    const double m = std::max(l1, l2);
    if (!std::isfinite(m)) return m;
    return m + std::log1p(std::exp(std::min(l1, l2) - m));
  };
  return DensityModel(d1.support(), pdf, ld, dv,
                      "mix:w=" + std::to_string(w) + "(" + d1.kind() + ";" + d2.kind() + ")",
                      lp);
}

DensityModel tilt(const DensityModel& d, double eps, double x0) {
  auto weight = [eps, x0](double x) { return std::exp(eps * std::tanh(x - x0)); };
  const double z =
      integrate([&d, weight](double x) { return d.pdf(x) * weight(x); }, d.support()).value;
  if (!(z > 0.0) || !std::isfinite(z)) throw NotNormalizable("tilt normalization failed");
  auto pdf = [d, weight, z](double x) { return d.pdf(x) * weight(x) / z; };
  DensityModel::Fn ld, dv;
  if (d.has_log_deriv()) {
    ld = [d, eps, x0](double x) {
      const double th = std::tanh(x - x0);
      return d.log_deriv(x) + eps * (1.0 - th * th);
    };
    dv = [pdf, ld = ld](double x) { return pdf(x) * ld(x); };
  }
  return DensityModel(d.support(), pdf, ld, dv,
                      "tilt:eps=" + std::to_string(eps) + "(" + d.kind() + ")",
                      [d, eps, x0, z](double x) {
                        return d.log_pdf(x) + eps * std::tanh(x - x0) - std::log(z);
                      });
}

double holder_conjugate(double p) {
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

}  // namespace relesc
