#include "relesc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relesc {

namespace {

// Compactifying coordinate t in (0,1) covering iv, increasing.
struct Coord {
  std::function<double(double)> x_of_t;
  std::function<double(double)> jac;
};

Coord make_coord(const Interval& iv) {
  if (iv.finite()) {
    const double lo = iv.lo(), len = iv.length();
    return {[lo, len](double t) { return lo + t * len; }, [len](double) { return len; }};
  }
  if (iv.lo_finite()) {
    const double lo = iv.lo();
    return {[lo](double t) { return lo + t / (1.0 - t); },
            [](double t) {
              const double d = 1.0 - t;
              return 1.0 / (d * d);
            }};
  }
  if (iv.hi_finite()) {
    const double hi = iv.hi();
    return {[hi](double t) { return hi - (1.0 - t) / t; },
            [](double t) { return 1.0 / (t * t); }};
  }
  return {[](double t) {
            const double u = 2.0 * t - 1.0;
            return u / (1.0 - u * u);
          },
          [](double t) {
            const double u = 2.0 * t - 1.0;
            const double d = 1.0 - u * u;
            return 2.0 * (1.0 + u * u) / (d * d);
          }};
}

// Non-adaptive 15-point mass of w over [a, b] in t-space; pilot use only.
double pilot_panel(const std::function<double(double)>& w, double a, double b) {
  static const double xs[8] = {0.991455371120812639, 0.949107912342758525, 0.864864423359769073,
                               0.741531185599394440, 0.586087235467691130, 0.405845151377397167,
                               0.207784955007898468, 0.0};
  static const double ws[8] = {0.022935322010529225, 0.063092092629978553, 0.104790010322250184,
                               0.140653259715525919, 0.169004726639267903, 0.190350578064785409,
                               0.204432940075298892, 0.209482141084727828};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double acc = ws[7] * w(c);
  for (int j = 0; j < 7; ++j) acc += ws[j] * (w(c - h * xs[j]) + w(c + h * xs[j]));
  return std::max(acc * h, 0.0);
}

// Cumulative values of g along a strictly increasing node vector. Only the
// segments touching an endpoint may diverge; an unanchorable lower endpoint
// shifts the zero of the map to the first interior node.
//
// Per-segment tolerances are tied to the total mass rather than each tiny
// segment: nested integrands carry a numerical noise floor that would
// otherwise stall the subdivision in segments whose contribution is
// negligible anyway.
CumulativeMap assemble(const std::function<double(double)>& g, const Interval& iv,
                       const std::vector<double>& xs, const QuadOptions& quad) {
  double total_est = 0.0;
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const double v = pilot_panel(g, xs[k - 1], xs[k]);
    if (std::isfinite(v)) total_est += v;
  }
  QuadOptions seg = quad;
  seg.seed_panels = 1;
  seg.abs_tol = std::max(quad.abs_tol, 1e-13 * total_est);
  seg.max_subdivisions = std::min(quad.max_subdivisions, 2000);
  const double noise_floor = 1e-8 * std::max(total_est, 1.0);
  auto segment = [&](double a, double b) {
    try {
      return integrate(g, Interval(a, b), seg).value;
    } catch (const NonConvergence& e) {
      if (std::isfinite(e.value_estimate) && e.error_estimate <= noise_floor)
        return e.value_estimate;
      throw;
    }
  };

  CumulativeMap out;
  std::vector<double> keep_x, keep_y;
  double y0 = 0.0;
  out.lower_anchored = true;
  if (xs.front() > iv.lo()) {
    try {
      y0 = segment(iv.lo(), xs.front());
    } catch (const NonConvergence&) {
      out.lower_anchored = false;
      y0 = 0.0;
    } catch (const NonFiniteEvaluand&) {
      out.lower_anchored = false;
      y0 = 0.0;
    }
  }
  keep_x.push_back(xs.front());
  keep_y.push_back(y0);

  for (std::size_t k = 1; k < xs.size(); ++k) {
    double inc;
    try {
      inc = segment(keep_x.back(), xs[k]);
    } catch (const Error&) {
      if (keep_x.size() == 1) {
        // Divergence against the lower endpoint node; re-anchor above it.
        keep_x[0] = xs[k];
        keep_y[0] = 0.0;
        out.lower_anchored = false;
        continue;
      }
      if (k + 1 == xs.size()) break;  // divergence at the upper endpoint node
      throw;
    }
    const double y = keep_y.back() + inc;
    if (!(inc > 0.0) || !(y > keep_y.back())) continue;  // underflow in a deep tail
    keep_x.push_back(xs[k]);
    keep_y.push_back(y);
  }
  if (keep_x.size() < 8) throw NonConvergence("degenerate cumulative map", 0.0, kInf, false);
  out.anchor_x = out.lower_anchored ? iv.lo() : keep_x.front();

  double upper_tail = 0.0;
  if (keep_x.back() < iv.hi()) {
    try {
      upper_tail = integrate(g, Interval(keep_x.back(), iv.hi()), seg).value;
    } catch (const NonConvergence& e) {
      if (!e.tail_growth && std::isfinite(e.value_estimate) &&
          e.error_estimate <= noise_floor)
        upper_tail = e.value_estimate;
      else
        upper_tail = e.tail_growth ? kInf : e.value_estimate;
    } catch (const NonFiniteEvaluand&) {
      upper_tail = kInf;
    }
  }
  out.upper_tail_mass = upper_tail;
  out.total_mass = out.lower_anchored ? keep_y.back() + upper_tail : kInf;
  out.map = MonotoneMap(std::move(keep_x), std::move(keep_y));
  return out;
}

}  // namespace

CumulativeMap cumulative_map(const std::function<double(double)>& g, const Interval& iv,
                             const CumulativeOptions& opt) {
  const int n = opt.n_nodes;
  if (n < 16) throw DomainError("cumulative map needs at least 16 nodes");

  const Coord co = make_coord(iv);
  auto w = [&](double t) {
    const double v = g(co.x_of_t(t));
    if (v == 0.0) return 0.0;
    if (!std::isfinite(v)) throw NonFiniteEvaluand("integrand not finite");
    return v * co.jac(t);
  };

  // Pilot cumulative on a uniform t-grid; only node placement depends on it.
  const int m = 256;
  std::vector<double> tgrid(m + 1), pilot(m + 1, 0.0);
  for (int j = 0; j <= m; ++j) tgrid[j] = static_cast<double>(j) / m;
  for (int j = 0; j < m; ++j) pilot[j + 1] = pilot[j] + pilot_panel(w, tgrid[j], tgrid[j + 1]);
  const double pilot_total = pilot.back();
  if (!(pilot_total > 0.0) || !std::isfinite(pilot_total))
    throw NonConvergence("pilot pass found no finite positive mass", pilot_total, kInf, false);

  // Target mass fractions for the nodes.
  std::vector<double> levels = opt.mass_fractions;
  if (levels.empty()) {
    levels.resize(n);
    for (int k = 0; k < n; ++k) levels[k] = static_cast<double>(k) / (n - 1);
  }
  const double eps = opt.tail_mass;
  for (double& u : levels)
    u = std::clamp(u, iv.lo_finite() ? 0.0 : eps, iv.hi_finite() ? 1.0 : 1.0 - eps);
  std::sort(levels.begin(), levels.end());

  // Quantiles of the pilot cumulative, then x positions.
  std::vector<double> xs;
  xs.reserve(levels.size());
  for (double u : levels) {
    const double target = u * pilot_total;
    double x;
    if (target <= 0.0) {
      x = iv.lo();
    } else if (target >= pilot_total) {
      x = iv.hi();
    } else {
      auto it = std::upper_bound(pilot.begin(), pilot.end(), target);
      const std::size_t j =
          std::clamp<std::size_t>(static_cast<std::size_t>(it - pilot.begin()), 1, m);
      const double frac = (target - pilot[j - 1]) / std::max(pilot[j] - pilot[j - 1], 1e-300);
      const double t = tgrid[j - 1] + std::clamp(frac, 0.0, 1.0) * (tgrid[j] - tgrid[j - 1]);
      x = co.x_of_t(std::clamp(t, 1e-14, 1.0 - 1e-14));
    }
    if (!xs.empty() && !(x > xs.back() + 1e-13 * (std::abs(x) + 1.0))) continue;
    if (!iv.contains(x) && x != iv.lo() && x != iv.hi()) continue;
    xs.push_back(x);
  }
  if (xs.size() < 8) throw NonConvergence("degenerate node placement", 0.0, kInf, false);

  return assemble(g, iv, xs, opt.quad);
}

CumulativeMap cumulative_map(const std::function<double(double)>& g, const Interval& iv,
                             int n_nodes) {
  CumulativeOptions opt;
  opt.n_nodes = n_nodes;
  return cumulative_map(g, iv, opt);
}

CumulativeMap cumulative_on_nodes(const std::function<double(double)>& g, const Interval& iv,
                                  const std::vector<double>& nodes, const QuadOptions& quad) {
  if (nodes.size() < 8) throw DomainError("cumulative_on_nodes needs at least 8 nodes");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i] < nodes[i + 1])) throw DomainError("nodes must be strictly increasing");
  return assemble(g, iv, nodes, quad);
}

double exact_cumulative(const CumulativeMap& cm, const std::function<double(double)>& g,
                        const Interval& iv, double x, const QuadOptions& quad_in) {
  QuadOptions quad = quad_in;
  if (quad.seed_panels == 0) quad.seed_panels = 1;  // sub-node-spacing segments
  const auto xs = cm.map.xs();
  const auto ys = cm.map.ys();
  if (x <= xs.front()) {
    if (x <= iv.lo()) return cm.lower_anchored ? 0.0 : -kInf;
    if (x == xs.front()) return ys.front();
    return ys.front() - integrate(g, Interval(x, xs.front()), quad).value;
  }
  if (x >= xs.back()) {
    if (x >= iv.hi()) return ys.back() + cm.upper_tail_mass;
    if (x == xs.back()) return ys.back();
    return ys.back() + integrate(g, Interval(xs.back(), x), quad).value;
  }
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - xs.begin()) - 1;
  if (x == xs[k]) return ys[k];
  return ys[k] + integrate(g, Interval(xs[k], x), quad).value;
}

double invert_exact_cumulative(const CumulativeMap& cm, const std::function<double(double)>& g,
                               const Interval& iv, double target, const QuadOptions& quad) {
  const auto xs = cm.map.xs();
  const auto ys = cm.map.ys();
  const double slack = 1e-12 * (std::abs(ys.front()) + std::abs(ys.back()) + 1.0);
  if (target < ys.front() - slack || target > ys.back() + slack)
    throw TargetOutOfRange("cumulative inversion target outside the node range");
  target = std::clamp(target, ys.front(), ys.back());

  // Bracketing node segment by the stored cumulative values.
  std::size_t lo = 0, hi = ys.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (target < ys[mid] ? hi : lo) = mid;
  }
  double a = xs[lo], b = xs[hi];
  double x = cm.map.inverse(target);  // interpolated seed
  const double ftol = 1e-14 * std::max(1.0, std::abs(target));
  for (int iter = 0; iter < 60; ++iter) {
    const double err = exact_cumulative(cm, g, iv, x, quad) - target;
    if (std::abs(err) <= ftol) return x;
    (err > 0.0 ? b : a) = x;
    const double d = g(x);
    double next = (d > 0.0 && std::isfinite(d)) ? x - err / d : 0.5 * (a + b);
    if (!(next > a) || !(next < b)) next = 0.5 * (a + b);
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() *
                     (std::abs(a) + std::abs(b) + 1.0))
      return next;
    x = next;
  }
  return x;
}

}  // namespace relesc
