#include "relesc/transform.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "relesc/functionals.hpp"
#include "relesc/numerics.hpp"
#include "relesc/quadrature.hpp"

namespace relesc {

namespace {

// Mass levels for transform node placement: uniform over the bulk with a
// quarter of the nodes split between geometrically refined tails, down to
// 1e-9 mass on each side. Strictly interior, so no node sits on a support
// endpoint where an open-support pdf vanishes.
std::vector<double> transform_levels(int n) {
  std::vector<double> u;
  u.reserve(n);
  const int tail = n / 8;
  const int bulk = n - 2 * tail;
  const double edge = 0.005;
  const double lo = std::log(edge), hi = std::log(1e-13);
  for (int k = 0; k < tail; ++k)
    u.push_back(std::exp(lo + (hi - lo) * (k + 1.0) / tail));
  for (int k = 0; k < bulk; ++k)
    u.push_back(edge + (1.0 - 2.0 * edge) * k / (bulk - 1.0));
  for (int k = 0; k < tail; ++k)
    u.push_back(1.0 - std::exp(lo + (hi - lo) * (k + 1.0) / tail));
  std::sort(u.begin(), u.end());
  return u;
}

// Shared assembly: segment masses of the output density equal segment masses
// of f, so nodes are placed at f-quantiles and the variable change and the
// output cumulative are integrated exactly between them.
TransformOutput build_escort(const DensityModel& f,
                             const std::function<double(double)>& weight,
                             const std::function<double(double)>& out_pdf,
                             const std::function<double(double)>& out_deriv, int n_nodes,
                             const std::string& kind) {
  if (n_nodes < 16) throw DomainError("transform needs at least 16 nodes");
  const Interval supp = f.support();

  CumulativeOptions fopt;
  fopt.n_nodes = n_nodes;
  fopt.mass_fractions = transform_levels(n_nodes);
  const CumulativeMap fmass =
      cumulative_map([&f](double x) { return f.pdf(x); }, supp, fopt);

  std::vector<double> xnodes(fmass.map.xs().begin(), fmass.map.xs().end());
  const CumulativeMap wmap = cumulative_on_nodes(weight, supp, xnodes);

  const auto wx = wmap.map.xs();
  const auto wy = wmap.map.ys();
  std::vector<double> ys, rhos, cdfs;
  ys.reserve(wx.size());
  for (std::size_t i = 0; i < wx.size(); ++i) {
    const double rho = out_pdf(wx[i]);
    if (!(rho > 0.0) || !std::isfinite(rho)) continue;
    ys.push_back(wy[i]);
    rhos.push_back(rho);
    cdfs.push_back(fmass.map(wx[i]) / fmass.total_mass);
  }

  TransformOutput out;
  out.lower_anchored = wmap.lower_anchored;
  out.support_length = wmap.total_mass;
  const double y_lo = wmap.lower_anchored ? 0.0 : -kInf;
  const double y_hi = wmap.map.y_at_x_max() + wmap.upper_tail_mass;
  out.density = GridDensity(Interval(y_lo, y_hi), std::move(ys), std::move(rhos),
                            std::move(cdfs), kind);

  // Pointwise values are exact: x(y) comes from inverting the cumulative of
  // the variable change by quadrature-backed Newton, with the interpolated
  // grid serving only the tiny-mass slivers beyond the node range.
  const GridDensity interp = out.density;
  auto wm = std::make_shared<CumulativeMap>(wmap);
  auto exact_pdf = [wm, weight, out_pdf, supp, interp](double y) {
    if (y <= wm->map.y_at_x_min() || y >= wm->map.y_at_x_max()) return interp.pdf(y);
    return out_pdf(invert_exact_cumulative(*wm, weight, supp, y));
  };
  DensityModel::Fn exact_deriv;
  if (out_deriv) {
    auto od = out_deriv;
    exact_deriv = [wm, weight, od, supp, interp](double y) {
      if (y <= wm->map.y_at_x_min() || y >= wm->map.y_at_x_max()) return interp.deriv(y);
      return od(invert_exact_cumulative(*wm, weight, supp, y));
    };
  }
  out.density.set_exact(exact_pdf, exact_deriv);

  // var_map over the nodes that survived in both maps.
  std::vector<double> vx(wx.begin(), wx.end()), vy(wy.begin(), wy.end());
  out.var_map = MonotoneMap(std::move(vx), std::move(vy));
  return out;
}

}  // namespace

TransformOutput rel_diff_escort(const DensityModel& f, const DensityModel& h, double alpha,
                                int n_nodes) {
  require_common_support(f, h);
  auto scaled = [](double lp, double c) { return c == 0.0 ? 0.0 : c * lp; };
  auto weight = [f, h, alpha, scaled](double x) {
    const double e = scaled(f.log_pdf(x), 1.0 - alpha) + scaled(h.log_pdf(x), alpha);
    if (std::isnan(e)) return kInf;
    return std::exp(e);
  };
  auto out_pdf = [f, h, alpha, scaled](double x) {
    const double e = scaled(f.log_pdf(x) - h.log_pdf(x), alpha);
    return std::isnan(e) ? kInf : std::exp(e);
  };
  std::function<double(double)> out_deriv;
  if (f.has_log_deriv() && h.has_log_deriv())
    out_deriv = [f, h, alpha](double x) { return transform_derivative(f, h, alpha, x); };
  return build_escort(f, weight, out_pdf, out_deriv, n_nodes,
                      "grid:releescort(" + f.kind() + ")");
}

double transform_derivative(const DensityModel& f, const DensityModel& h, double alpha,
                            double x) {
  if (!f.has_log_deriv() || !h.has_log_deriv())
    throw MissingDerivative("transform derivative needs both log-derivatives");
  if (alpha == 0.0) return 0.0;
  const double lp1 = f.log_pdf(x);
  const double lp2 = h.log_pdf(x);
  if (lp1 == -kInf || lp2 == -kInf)
    throw DomainError("transform derivative needs interior x");
  const double diff = f.log_deriv(x) - h.log_deriv(x);
  return alpha * std::exp((2.0 * alpha - 1.0) * lp1 - 2.0 * alpha * lp2) * diff;
}

TransformOutput diff_escort(const DensityModel& f, double beta, int n_nodes) {
  auto scaled = [](double lp, double c) { return c == 0.0 ? 0.0 : c * lp; };
  auto weight = [f, beta, scaled](double x) {
    return std::exp(scaled(f.log_pdf(x), 1.0 - beta));
  };
  auto out_pdf = [f, beta, scaled](double x) {
    return std::exp(scaled(f.log_pdf(x), beta));
  };
  std::function<double(double)> out_deriv;
  if (f.has_log_deriv()) {
    out_deriv = [f, beta, scaled](double x) {
      // d/dy f^beta(y(x)) = beta f^{2 beta - 1} f'/f.
      const double lp = f.log_pdf(x);
      if (lp == -kInf) return 0.0;
      return beta * std::exp(scaled(lp, 2.0 * beta - 1.0)) * f.log_deriv(x);
    };
  }
  return build_escort(f, weight, out_pdf, out_deriv, n_nodes,
                      "grid:escort(" + f.kind() + ")");
}

double inverse_scaling(const DensityModel& g, double alpha) {
  if (alpha == 0.0) throw DomainError("inverse transform is undefined at alpha = 0");
  if (alpha == 1.0) {
    const double len = g.support().length();
    if (!std::isfinite(len))
      throw NotCompact("alpha = 1 inverse needs a compactly supported density");
    return len;
  }
  const double gamma = (alpha - 1.0) / alpha;
  double integral;
  try {
    integral = integrate(
                   [&g, gamma](double x) {
                     const double lp = g.log_pdf(x);
                     return std::exp(gamma == 0.0 ? 0.0 : gamma * lp);
                   },
                   g.support())
                   .value;
  } catch (const NonConvergence&) {
    throw EntropyPowerDivergent("entropy power N_{(alpha-1)/alpha} diverges");
  } catch (const NonFiniteEvaluand&) {
    throw EntropyPowerDivergent("entropy power integrand is unbounded");
  }
  if (!(integral > 0.0) || !std::isfinite(integral))
    throw EntropyPowerDivergent("entropy power integral is not finite");
  // N_gamma = I^{1/(1-gamma)} with 1 - gamma = 1/alpha.
  return std::exp(alpha * std::log(integral));
}

DensityModel inverse_rel_diff_escort(const DensityModel& g, const DensityModel& h, double alpha,
                                     int n_nodes) {
  if (alpha == 0.0) throw DomainError("inverse transform is undefined at alpha = 0");
  const double r = inverse_scaling(g, alpha);
  const Interval gs = g.support();
  const Interval ys(gs.lo_finite() ? gs.lo() / r : gs.lo(),
                    gs.hi_finite() ? gs.hi() / r : gs.hi());
  const double inv_astar = (alpha - 1.0) / alpha;

  const double log_r = std::log(r);
  auto g_part = [g, r, log_r, inv_astar](double t) {
    const double lp = g.log_pdf(r * t);
    if (lp == -kInf) return 0.0;
    return std::exp(inv_astar == 0.0 ? 0.0 : inv_astar * (log_r + lp));
  };

  CumulativeOptions opt;
  opt.n_nodes = n_nodes;
  auto gmap = std::make_shared<CumulativeMap>(cumulative_map(g_part, ys, opt));
  auto hmap = std::make_shared<CumulativeMap>(
      cumulative_map([h](double x) { return h.pdf(x); }, h.support(), opt));
  if (!gmap->lower_anchored)
    throw EntropyPowerDivergent("inverse mass map diverges at the lower endpoint");
  const double tg = gmap->total_mass;
  const double th = hmap->total_mass;

  const Interval hs = h.support();
  auto h_pdf_fn = [h](double x) { return h.pdf(x); };
  // The target stays strictly inside the mass range so the inversion never
  // lands on a support edge where g vanishes.
  const double mlo = gmap->map.y_at_x_min();
  const double mhi = gmap->map.y_at_x_max();
  const double pad = 1e-15 * (std::abs(mlo) + std::abs(mhi) + 1.0);
  auto y_of_x = [gmap, hmap, g_part, h_pdf_fn, ys, hs, tg, th, mlo, mhi, pad](double x) {
    double target = exact_cumulative(*hmap, h_pdf_fn, hs, x) / th * tg;
    target = std::clamp(target, mlo + pad, mhi - pad);
    return invert_exact_cumulative(*gmap, g_part, ys, target);
  };

  auto log_pdf = [g, h, r, log_r, alpha, y_of_x](double x) {
    const double lh = h.log_pdf(x);
    if (lh == -kInf) return -kInf;
    const double lg = g.log_pdf(r * y_of_x(x));
    if (lg == -kInf) return -kInf;
    return (log_r + lg) / alpha + lh;
  };
  auto pdf = [log_pdf](double x) { return std::exp(log_pdf(x)); };

  DensityModel::Fn ld;
  if (g.has_log_deriv() && h.has_log_deriv()) {
    ld = [g, h, r, log_r, alpha, inv_astar, y_of_x](double x) {
      const double y = y_of_x(x);
      const double lg = g.log_pdf(r * y);
      const double lh = h.log_pdf(x);
      if (lg == -kInf || lh == -kInf) return 0.0;
      const double yprime =
          std::exp((inv_astar == 0.0 ? 0.0 : -inv_astar * (log_r + lg)) + lh);
      return g.log_deriv(r * y) * r * yprime / alpha + h.log_deriv(x);
    };
  }
  DensityModel::Fn dv;
  if (ld) dv = [pdf, ld](double x) { return pdf(x) * ld(x); };
  return DensityModel(h.support(), pdf, ld, dv,
                      "grid:invrde(alpha=" + std::to_string(alpha) + ";" + g.kind() + ";" +
                          h.kind() + ")",
                      log_pdf);
}

}  // namespace relesc
