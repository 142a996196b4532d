#pragma once

#include <optional>

#include "relesc/density.hpp"
#include "relesc/grid_density.hpp"
#include "relesc/params.hpp"

namespace relesc {

/// Value with the propagated quadrature error estimate.
struct Evaluated {
  double value = 0.0;
  double abs_err = 0.0;
};

/// p-th deviation sigma_p = (int |x|^p f)^{1/p}; p = 0 gives the logarithmic
/// limit exp<log|x|>, p = +inf the essential sup of |x| on the support.
double deviation(const DensityModel& d, double p);

/// Renyi entropy power N_lambda = (int f^lambda)^{1/(1-lambda)}; the
/// lambda -> 1 limit is dispatched to the Shannon form.
double renyi_entropy_power(const DensityModel& d, double lambda);
double shannon_entropy(const DensityModel& d);
double tsallis_entropy(const DensityModel& d, double lambda);

/// (p, lambda)-Fisher information phi = (int |f^{lambda-2} f'|^p f)^{1/(p lambda)}.
/// p = 1 is supported for analytic catalog densities only.
double fisher_plam(const DensityModel& d, double p, double lambda);

/// K_xi = int f^xi h^{1-xi} over the common support.
Evaluated k_xi_est(const DensityModel& f, const DensityModel& h, double xi);
double k_xi(const DensityModel& f, const DensityModel& h, double xi);

/// Renyi divergence log(K_xi)/(xi - 1); xi -> 1 goes to Kullback-Leibler.
double renyi_div(const DensityModel& f, const DensityModel& h, double xi);
Evaluated kl_div_est(const DensityModel& f, const DensityModel& h);
double kl_div(const DensityModel& f, const DensityModel& h);

struct RelFisher {
  double F = 0.0;    // integral value
  double phi = 0.0;  // F^{1/(p lambda)}
  double abs_err = 0.0;
};

/// Relative Fisher divergence
/// F_{p,lambda}[f||h] = int f^{1+p(lambda-1)} h^{-lambda p} |(log f/h)'|^p.
RelFisher relative_fisher(const DensityModel& f, const DensityModel& h, double p, double lambda);

struct RelCumMoment {
  double mu = 0.0;
  std::optional<double> sigma;  // mu^{1/(p alpha)}; absent when alpha = 0
  double abs_err = 0.0;
};

/// Relative cumulative moment
/// mu_{p,alpha}[f||h] = int |int_lo^x f^{1-alpha} h^alpha|^p f(x) dx.
RelCumMoment relative_cumulative_moment(const DensityModel& f, const DensityModel& h, double p,
                                        double alpha);

/// Fisher-Shannon complexity N[d] phi_{2,1}[d]; scale invariant.
double fisher_shannon(const DensityModel& d);

/// Segment-aligned overloads for grid densities: the integrals are summed
/// over the node segments, where the interpolants are smooth.
double shannon_entropy(const GridDensity& gd);
double fisher_plam(const GridDensity& gd, double p, double lambda);
double fisher_shannon(const GridDensity& gd);

/// Convolution with the Gaussian of variance tau; the grid extends 8 sqrt(tau)
/// beyond the original support and pointwise values stay exact (computed by
/// quadrature, including the derivative as the convolution with G').
GridDensity gauss_convolve(const DensityModel& d, double tau, int n_nodes = 257);

/// Throws SupportMismatch unless f and h share their support interval.
void require_common_support(const DensityModel& f, const DensityModel& h);

/// Pointwise probe for f == h (same support, log-pdfs agree at probe points).
bool densities_identical(const DensityModel& f, const DensityModel& h);

}  // namespace relesc
