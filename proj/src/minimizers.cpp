#include "relesc/minimizers.hpp"

#include <cmath>
#include <memory>

#include "relesc/functionals.hpp"
#include "relesc/numerics.hpp"
#include "relesc/specfun.hpp"
#include "relesc/transform.hpp"

namespace relesc {

namespace {

// Centered cumulative of a density: F(x) - 1/2, mapping the median to zero.
// The stretched-Gaussian minimizers are symmetric, so mass matching against
// their center is the anchoring that makes every branch a bijection.
std::function<double(double)> centered_cdf(const DensityModel& d) {
  auto cm = std::make_shared<CumulativeMap>(
      cumulative_map([d](double x) { return d.pdf(x); }, d.support(), 1025));
  const double total = cm->total_mass;
  return [cm, total](double x) { return cm->map(x) / total - 0.5; };
}

DensityModel density_from_logs(const Interval& supp, const DensityModel::Fn& log_pdf,
                               const DensityModel::Fn& ld, const std::string& kind) {
  auto pdf = [log_pdf](double x) { return std::exp(log_pdf(x)); };
  DensityModel::Fn dv;
  if (ld) dv = [pdf, ld](double x) { return pdf(x) * ld(x); };
  return DensityModel(supp, pdf, ld, dv, kind, log_pdf);
}

struct GBase {
  DensityModel g;
  double a = 0.0;  // normalization constant, g(0)
};

GBase make_g(double p_star, double lambda) {
  GBase gb;
  gb.g = make_stretched_gaussian(p_star, lambda);
  gb.a = gb.g.pdf(0.0);
  return gb;
}

}  // namespace

double sharp_constant_em(double p_star, double lambda) {
  const DensityModel g = make_stretched_gaussian(p_star, lambda);
  return deviation(g, p_star) / renyi_entropy_power(g, lambda);
}

double sharp_constant_stam(double p_star, double lambda) {
  const DensityModel g = make_stretched_gaussian(p_star, lambda);
  const double p = holder_conjugate(p_star);
  return fisher_plam(g, p, lambda) * renyi_entropy_power(g, lambda);
}

MinimizerBranch minimizer_branch(double lambda, double alpha) {
  if (alpha == 1.0) {
    if (!(lambda > 1.0))
      throw BranchUnavailable("alpha = 1 minimizer needs a compact stretched Gaussian");
    return MinimizerBranch::alpha_one;
  }
  if (std::abs(lambda - 1.0) <= 1e-9) return MinimizerBranch::gamma;
  return lambda > 1.0 ? MinimizerBranch::trig : MinimizerBranch::hyperbolic;
}

DensityModel closed_form_minimizer(const MinimizerSpec& spec) {
  const double p_star = spec.p_star;
  const double lambda = spec.lambda;
  const double alpha = spec.alpha;
  const DensityModel& h = spec.reference;
  if (alpha == 0.0) throw DomainError("minimizer undefined at alpha = 0");
  if (!h.has_log_deriv())
    throw MissingDerivative("minimizer reference needs a log-derivative");
  const MinimizerBranch branch = minimizer_branch(lambda, alpha);

  const GBase gb = make_g(p_star, lambda);
  const DensityModel g = gb.g;
  auto Hc = centered_cdf(h);
  const std::string kind = "minimizer(pstar=" + std::to_string(p_star) +
                           ",lambda=" + std::to_string(lambda) +
                           ",alpha=" + std::to_string(alpha) + ";" + h.kind() + ")";

  if (branch == MinimizerBranch::alpha_one) {
    const double r = g.support().length();
    const double log_r = std::log(r);
    auto lp = [g, r, log_r, Hc, h](double x) {
      const double lh = h.log_pdf(x);
      if (lh == -kInf) return -kInf;
      return log_r + g.log_pdf(r * Hc(x)) + lh;
    };
    auto ld = [g, r, Hc, h](double x) {
      const double u = r * Hc(x);
      if (h.pdf(x) <= 0.0 || g.pdf(u) <= 0.0) return 0.0;
      return g.log_deriv(u) * r * h.pdf(x) + h.log_deriv(x);
    };
    return density_from_logs(h.support(), lp, ld, kind);
  }

  const double r = inverse_scaling(g, alpha);
  const double inv_astar = (alpha - 1.0) / alpha;  // 1/alpha*
  const double log_ra = std::log(r * gb.a);

  if (branch == MinimizerBranch::gamma) {
    if (alpha <= 0.0)
      throw EntropyPowerDivergent("gamma-branch minimizer needs alpha > 0");
    const double astar = alpha / (alpha - 1.0);
    const double s = 1.0 / p_star;
    const double gs = std::tgamma(s);
    // C = r^{1/alpha} a^{-1/alpha*} p* / (alpha*)^{1/p*}
    const double C = std::exp(std::log(r) / alpha - inv_astar * std::log(gb.a)) * p_star /
                     std::pow(astar, s);
    auto u_of_x = [C, gs, s, Hc](double x) {
      const double arg = std::min(C * std::abs(Hc(x)), gs * (1.0 - 1e-15));
      return inv_lower_inc_gamma(s, arg);
    };
    auto lp = [=](double x) {
      const double lh = h.log_pdf(x);
      if (lh == -kInf) return -kInf;
      return log_ra / alpha - (astar / alpha) * u_of_x(x) + lh;
    };
    auto ld = [=](double x) {
      const double hv = h.pdf(x);
      if (hv <= 0.0) return 0.0;
      const double u = u_of_x(x);
      // |r y|^{p*} = alpha* u, hence r g(r y) = r a exp(-alpha* u).
      const double ry = std::copysign(std::pow(astar * u, s), Hc(x));
      const double ldg =
          -p_star * std::pow(std::abs(ry), p_star - 1.0) * (ry >= 0.0 ? 1.0 : -1.0);
      const double yp = std::exp(-inv_astar * (log_ra - astar * u)) * hv;
      return ldg * r * yp / alpha + h.log_deriv(x);
    };
    return density_from_logs(h.support(), lp, ld, kind);
  }

  // Trig (lambda > 1) and hyperbolic (lambda < 1) branches share their
  // structure through base = 1 - (lambda-1)|r y|^{p*}:
  //   trig:       base = 1 - |sin|^{p*},  hyperbolic: base = 1 + |sinh|^{p*}.
  const double astar = alpha / (alpha - 1.0);
  const GtfParams gp{astar * (1.0 - lambda), p_star};
  const double lam_fac = std::pow(std::abs(1.0 - lambda), 1.0 / p_star);
  const double C =
      std::exp(std::log(lam_fac) + std::log(r) / alpha - inv_astar * std::log(gb.a));
  const bool trig = (branch == MinimizerBranch::trig);
  const double half_range = trig ? gtf_quarter_period(gp) : gtf_asymptotic_range(gp);
  if (!std::isfinite(half_range))
    throw BranchUnavailable("generalized arcsine range is unbounded for these indices");

  auto eval_parts = [=](double x, double& base, double& ry) {
    const double cap = half_range * (trig ? 1.0 : 1.0 - 1e-12);
    const double z = std::clamp(C * Hc(x), -cap, cap);
    const double sv = trig ? sin_pq(gp, z) : sinh_pq(gp, z);
    base = 1.0 + (trig ? -1.0 : 1.0) * std::pow(std::abs(sv), p_star);
    ry = sv / lam_fac;
  };

  auto lp = [=](double x) {
    const double lh = h.log_pdf(x);
    if (lh == -kInf) return -kInf;
    double base, ry;
    eval_parts(x, base, ry);
    if (base <= 0.0) return -kInf;
    return log_ra / alpha + std::log(base) / (alpha * (lambda - 1.0)) + lh;
  };
  auto ld = [=](double x) {
    const double hv = h.pdf(x);
    if (hv <= 0.0) return 0.0;
    double base, ry;
    eval_parts(x, base, ry);
    if (base <= 0.0) return 0.0;
    const double ldg = -p_star * std::pow(std::abs(ry), p_star - 1.0) *
                       (ry >= 0.0 ? 1.0 : -1.0) / base;
    const double log_rg = log_ra + std::log(base) / (lambda - 1.0);
    const double yp = std::exp(-inv_astar * log_rg) * hv;
    return ldg * r * yp / alpha + h.log_deriv(x);
  };
  return density_from_logs(h.support(), lp, ld, kind);
}

AdaptedReference adapted_reference(const DensityModel& f_star, double p_star, double lambda,
                                   double alpha) {
  if (alpha == 0.0) throw DomainError("adapted reference undefined at alpha = 0");
  if (alpha == 1.0 && !(lambda > 1.0))
    throw NormalizationFailure(
        "adapted reference is improper: alpha = 1 needs a compact stretched Gaussian "
        "(lambda > 1)");
  if (std::abs(lambda - 1.0) <= 1e-9 && alpha < 1.0)
    throw EntropyPowerDivergent("adapted reference at lambda = 1 needs alpha > 1");

  const GBase gb = make_g(p_star, lambda);
  const DensityModel g = gb.g;
  const double r = alpha == 1.0 ? g.support().length() : inverse_scaling(g, alpha);
  auto Fs = centered_cdf(f_star);
  const double log_ra = std::log(r * gb.a);

  std::function<double(double)> log_c;
  std::function<double(double)> ry_of_x;  // for the log-derivative chain
  if (std::abs(lambda - 1.0) <= 1e-9) {
    const double s = 1.0 / p_star;
    const double gs = std::tgamma(s);
    auto u_of_x = [=](double x) {
      const double arg = std::min((p_star / gb.a) * std::abs(Fs(x)), gs * (1.0 - 1e-15));
      return inv_lower_inc_gamma(s, arg);
    };
    log_c = [=](double x) { return u_of_x(x) - log_ra; };
    ry_of_x = [=](double x) { return std::copysign(std::pow(u_of_x(x), s), Fs(x)); };
  } else {
    const bool trig = lambda > 1.0;
    const GtfParams gp{1.0 - lambda, p_star};
    const double lam_fac = std::pow(std::abs(1.0 - lambda), 1.0 / p_star);
    const double cap = (trig ? gtf_quarter_period(gp) : gtf_asymptotic_range(gp)) *
                       (trig ? 1.0 : 1.0 - 1e-12);
    auto base_of_x = [=](double x, double& ry) {
      const double z = std::clamp(lam_fac * Fs(x) / gb.a, -cap, cap);
      const double sv = trig ? sin_pq(gp, z) : sinh_pq(gp, z);
      ry = sv / lam_fac;
      return 1.0 + (trig ? -1.0 : 1.0) * std::pow(std::abs(sv), p_star);
    };
    log_c = [=](double x) {
      double ry;
      const double base = base_of_x(x, ry);
      if (base <= 0.0) return kInf;
      return -log_ra - std::log(base) / (lambda - 1.0);
    };
    ry_of_x = [=](double x) {
      double ry;
      base_of_x(x, ry);
      return ry;
    };
  }

  auto h_lp = [f_star, log_c, alpha](double x) {
    const double lf = f_star.log_pdf(x);
    if (lf == -kInf) return -kInf;
    return lf + log_c(x) / alpha;
  };
  DensityModel::Fn h_ld;
  if (f_star.has_log_deriv()) {
    h_ld = [=](double x) {
      const double lf = f_star.log_pdf(x);
      if (lf == -kInf) return 0.0;
      const double ry = ry_of_x(x);
      // dlogC/dx = -ldg(ry) r y',  y' = f* / (r g(r y)) = f* C.
      double dlogc = 0.0;
      if (g.pdf(ry) > 0.0) {
        const double yp = std::exp(lf + log_c(x));
        dlogc = -g.log_deriv(ry) * r * yp;
      }
      return f_star.log_deriv(x) + dlogc / alpha;
    };
  }

  AdaptedReference out;
  out.f_star = f_star;
  out.c_factor = [log_c](double x) { return std::exp(log_c(x)); };
  out.r = r;
  out.p_star = p_star;
  out.lambda = lambda;
  out.alpha = alpha;
  out.h_star = density_from_logs(
      f_star.support(), h_lp, h_ld,
      "hstar(pstar=" + std::to_string(p_star) + ",lambda=" + std::to_string(lambda) +
          ",alpha=" + std::to_string(alpha) + ";" + f_star.kind() + ")");

  const double mass =
      integrate([&out](double x) { return out.h_star.pdf(x); }, f_star.support()).value;
  if (!(std::abs(mass - 1.0) <= 1e-6))
    throw NormalizationFailure("adapted reference mass " + std::to_string(mass) +
                               " is not 1 within 1e-6");
  return out;
}

}  // namespace relesc
