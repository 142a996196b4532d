#pragma once

#include <functional>

#include "relesc/interval.hpp"

namespace relesc {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 10000;
  int seed_panels = 0;  // 0: choose by interval kind (4 finite, 8 infinite)
};

/// Library-wide default options. RELESC_TOL in the environment overrides
/// the relative tolerance (read once, at first use).
const QuadOptions& default_quad_options();

/// Adaptive Gauss-Kronrod (G7-K15) integration of g over iv.
///
/// Infinite endpoints are removed by a smooth substitution:
///   (-inf, inf): x = t / (1 - t^2)
///   (lo,  inf):  x = lo + t / (1 - t)   (mirrored for (-inf, hi))
/// Panels never evaluate at interval endpoints, so integrable endpoint
/// singularities are handled by subdivision alone.
///
/// Throws NonConvergence when the subdivision cap is hit with the error
/// above tolerance, and NonFiniteEvaluand when g returns NaN/inf at an
/// interior node.
QuadResult integrate(const std::function<double(double)>& g, const Interval& iv,
                     const QuadOptions& opt = default_quad_options());

QuadResult integrate(const std::function<double(double)>& g, const Interval& iv,
                     double rel_tol, double abs_tol);

}  // namespace relesc
