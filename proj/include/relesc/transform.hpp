#pragma once

#include "relesc/density.hpp"
#include "relesc/grid_density.hpp"

namespace relesc {

/// Result of a differential-escort style transformation: the transformed
/// density over the new variable y, together with the monotone change of
/// variable y(x). With the canonical anchoring y = 0 at the lower support
/// endpoint; when the variable-change integrand has divergent mass at the
/// lower endpoint the anchor moves to an interior node (lower_anchored is
/// false) and the y support extends to -inf.
struct TransformOutput {
  GridDensity density;
  MonotoneMap var_map;
  double support_length = 0.0;  // total mass of the variable-change integrand
  bool lower_anchored = true;
};

/// Relative differential-escort transform of order alpha:
/// density (f/h)^alpha in the variable y with y' = f^{1-alpha} h^alpha.
TransformOutput rel_diff_escort(const DensityModel& f, const DensityModel& h, double alpha,
                                int n_nodes = 513);

/// Derivative d/dy of the transformed density at y(x):
/// alpha f^{2 alpha - 1} h^{-2 alpha} (f'/f - h'/h).
double transform_derivative(const DensityModel& f, const DensityModel& h, double alpha,
                            double x);

/// Plain differential-escort transform (improper uniform reference):
/// density f^beta in the variable y with y' = f^{1-beta}.
TransformOutput diff_escort(const DensityModel& f, double beta, int n_nodes = 513);

/// Scaling factor of the inverse transform, N_{(alpha-1)/alpha}[g]; for
/// alpha = 1 the length of the support of g.
double inverse_scaling(const DensityModel& g, double alpha);

/// Inverse of the relative differential-escort transform:
/// pdf (r g(r y(x)))^{1/alpha} h(x) with y matched by cumulative mass,
/// r = inverse_scaling(g, alpha). Returns a grid-backed density on the
/// support of h carrying exact pdf / log-derivative closures.
DensityModel inverse_rel_diff_escort(const DensityModel& g, const DensityModel& h, double alpha,
                                     int n_nodes = 513);

}  // namespace relesc
