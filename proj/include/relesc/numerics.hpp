#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "relesc/interpolation.hpp"
#include "relesc/interval.hpp"
#include "relesc/quadrature.hpp"

namespace relesc {

/// Cumulative integral Y(x) = int_lo^x g of a positive integrand, realized as
/// a strictly increasing node map. When the integral diverges at the lower
/// endpoint, anchoring shifts to an interior reference node (Y = 0 there) and
/// `lower_anchored` is false.
struct CumulativeMap {
  MonotoneMap map;
  double total_mass = 0.0;       // +inf when mass diverges at either endpoint
  double upper_tail_mass = 0.0;  // mass above the last node (may be +inf)
  bool lower_anchored = true;
  double anchor_x = 0.0;  // node where Y = 0

  double operator()(double x) const { return map(x); }
};

struct CumulativeOptions {
  int n_nodes = 513;
  /// Mass fractions (in (0,1), strictly increasing) at which to place nodes.
  /// Empty means an equal-mass partition.
  std::vector<double> mass_fractions;
  QuadOptions quad = default_quad_options();
  /// Mass left beyond the first/last node at an endpoint that is infinite
  /// (or where the integrand cannot be anchored).
  double tail_mass = 1e-9;
};

/// Builds the cumulative map of g over iv with nodes placed by an equal-mass
/// partition computed from a pilot pass. Requires g > 0 on the open interval
/// and n_nodes >= 16.
CumulativeMap cumulative_map(const std::function<double(double)>& g, const Interval& iv,
                             const CumulativeOptions& opt = {});

CumulativeMap cumulative_map(const std::function<double(double)>& g, const Interval& iv,
                             int n_nodes);

/// Cumulative values of g along a caller-supplied strictly increasing node
/// vector (same anchoring rules as cumulative_map).
CumulativeMap cumulative_on_nodes(const std::function<double(double)>& g, const Interval& iv,
                                  const std::vector<double>& nodes,
                                  const QuadOptions& quad = default_quad_options());

/// Exact cumulative value at x: the nearest node value plus a short
/// quadrature, so no interpolation error is involved.
double exact_cumulative(const CumulativeMap& cm, const std::function<double(double)>& g,
                        const Interval& iv, double x,
                        const QuadOptions& quad = default_quad_options());

/// Solves exact_cumulative(...) = target by a safeguarded Newton iteration
/// seeded from the interpolated inverse (g is the derivative).
double invert_exact_cumulative(const CumulativeMap& cm, const std::function<double(double)>& g,
                               const Interval& iv, double target,
                               const QuadOptions& quad = default_quad_options());

}  // namespace relesc
