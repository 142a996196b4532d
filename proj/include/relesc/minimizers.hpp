#pragma once

#include <functional>

#include "relesc/density.hpp"

namespace relesc {

/// Sharp constant of the moment-entropy inequality,
/// K0 = sigma_{p*}[g_{p,lambda}] / N_lambda[g_{p,lambda}], evaluated
/// numerically at the stretched-Gaussian minimizer.
double sharp_constant_em(double p_star, double lambda);

/// Sharp constant of the Stam inequality at beta = lambda,
/// K1 = phi_{p,lambda}[g_{p,lambda}] N_lambda[g_{p,lambda}].
double sharp_constant_stam(double p_star, double lambda);

enum class MinimizerBranch { trig, hyperbolic, gamma, alpha_one };

/// Branch selection: alpha = 1 needs a compactly supported stretched
/// Gaussian (lambda > 1); lambda = 1 uses the incomplete-gamma form;
/// otherwise trig (lambda > 1) or hyperbolic (lambda < 1).
MinimizerBranch minimizer_branch(double lambda, double alpha);

struct MinimizerSpec {
  double p_star = 2.0;
  double lambda = 2.0;
  double alpha = 2.0;
  DensityModel reference;  // h
};

/// Closed-form minimizing density of the relative moment-entropy / Stam
/// inequalities for reference h, expressed through generalized trigonometric,
/// hyperbolic or incomplete-gamma functions of the centered cumulative of h.
/// Fully analytic closures (pdf and log-derivative).
DensityModel closed_form_minimizer(const MinimizerSpec& spec);

struct AdaptedReference {
  DensityModel f_star;
  DensityModel h_star;
  std::function<double(double)> c_factor;  // C with h* = f* C^{1/alpha}
  double r = 0.0;                          // scaling of the matched minimizer
  double p_star = 2.0;
  double lambda = 2.0;
  double alpha = 2.0;
};

/// Solves the inverse problem: the reference h* for which the prescribed
/// density f* minimizes the relative inequalities at (p*, lambda, alpha).
/// Throws NormalizationFailure when h* would be improper (alpha = 1 with a
/// non-compact stretched Gaussian, i.e. lambda <= 1).
AdaptedReference adapted_reference(const DensityModel& f_star, double p_star, double lambda,
                                   double alpha);

}  // namespace relesc
