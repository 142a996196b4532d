#include <doctest.h>

#include <cmath>
#include <random>

#include "relesc/density.hpp"
#include "relesc/functionals.hpp"
#include "relesc/transform.hpp"
#include "test_support.hpp"

using namespace relesc;
using namespace relesc::testing;

TEST_CASE("transform of a density against itself is uniform on (0,1)") {
  const DensityModel f = make_exponential(2.0);
  const TransformOutput t = rel_diff_escort(f, f, 1.7, 129);
  CHECK(close_abs(t.support_length, 1.0, 1e-9));
  for (double y : {0.1, 0.35, 0.62, 0.9})
    CHECK(close_abs(t.density.pdf(y), 1.0, 1e-8));
}

TEST_CASE("exponential pair: closed-form density and support length") {
  const DensityModel f = make_exponential(2.0);
  const DensityModel h = make_exponential(1.0);
  for (double alpha : {0.5, 1.0, 1.5, 3.0}) {
    const TransformOutput t = rel_diff_escort(f, h, alpha, 513);
    const ExpPairOracle oracle{2.0, alpha};
    CHECK(close_rel(t.support_length, oracle.support_length(), 1e-8));
    // Compare on interior mass quantiles.
    const auto ys = t.density.nodes();
    for (std::size_t i = 4; i + 4 < ys.size(); i += 7) {
      const double y = ys[i];
      CHECK(close_rel(t.density.pdf(y), oracle.pdf(y), 1e-6));
    }
  }
  // alpha = a* = 2: exponential output after a trivial scaling.
  const TransformOutput t2 = rel_diff_escort(f, h, 2.0, 513);
  CHECK(std::isinf(t2.support_length));
  const ExpPairOracle oracle{2.0, 2.0};
  for (double y : {0.05, 0.2, 0.5, 1.0, 2.0})
    CHECK(close_rel(t2.density.pdf(y), oracle.pdf(y), 1e-6));
}

TEST_CASE("support length equals K_alpha[h||f]") {
  const DensityModel f = make_exponential(2.0);
  const DensityModel h = make_exponential(1.0);
  for (double alpha : {0.5, 1.3, 1.9}) {
    const TransformOutput t = rel_diff_escort(f, h, alpha, 129);
    CHECK(close_rel(t.support_length, k_xi(h, f, alpha), 1e-8));
  }
}

TEST_CASE("transform derivative matches the grid interpolant") {
  const DensityModel f = make_exponential(2.0);
  const DensityModel h = make_exponential(1.0);
  CHECK(transform_derivative(f, f, 1.3, 0.4) == 0.0);
  CHECK(transform_derivative(f, h, 0.0, 0.4) == 0.0);

  const double alpha = 1.0;
  const TransformOutput t = rel_diff_escort(f, h, alpha, 513);
  for (double x : {0.3, 0.8, 1.5}) {
    const double y = t.var_map(x);
    const double want = transform_derivative(f, h, alpha, x);
    CHECK(close_rel(t.density.deriv(y), want, 1e-4));
  }

  // Finite differences of the closed-form output density, alpha = 1, a = 2.
  const ExpPairOracle oracle{2.0, 1.0};
  const double y0 = t.var_map(0.3);
  const double hstep = 1e-6;
  const double fd = (oracle.pdf(y0 + hstep) - oracle.pdf(y0 - hstep)) / (2.0 * hstep);
  CHECK(close_rel(transform_derivative(f, h, 1.0, 0.3), fd, 1e-5));
}

TEST_CASE("Renyi and Shannon identities of the transformed density") {
  const DensityModel f = make_exponential(2.0);
  const DensityModel h = make_exponential(1.0);
  const double d_kl = kl_div(f, h);
  for (double lambda : {0.5, 1.5, 2.0}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const TransformOutput t = rel_diff_escort(f, h, alpha, 513);
      const DensityModel td = t.density.as_density();
      const double xi = 1.0 + alpha * (lambda - 1.0);
      // N_lambda^{1-lambda}[f_alpha] = K_xi[f||h]
      const double n = renyi_entropy_power(td, lambda);
      const double lhs = std::exp((1.0 - lambda) * std::log(n));
      CHECK(close_rel(lhs, k_xi(f, h, xi), 1e-6));
      // S[f_alpha] = -alpha D[f||h]
      CHECK(close_abs(shannon_entropy(t.density), -alpha * d_kl, 1e-6));
    }
  }
}

TEST_CASE("Fisher information of the transformed density (relative identity)") {
  const DensityModel f = make_exponential(2.0);
  const DensityModel h = make_exponential(1.0);
  const double p = 2.0;
  for (double lambda : {0.8, 1.5}) {
    for (double alpha : {0.5, 2.0}) {
      if (!(lambda * alpha > 1.0)) continue;  // exponential-pair convergence window
      const TransformOutput t = rel_diff_escort(f, h, alpha, 513);
      const double lhs = fisher_plam(t.density, p, lambda);
      const double phi = relative_fisher(f, h, p, lambda * alpha).phi;
      const double rhs = std::pow(std::abs(alpha), 1.0 / lambda) *
                         std::pow(phi, alpha);
      CHECK(close_rel(lhs, rhs, 1e-5));
    }
  }
}

TEST_CASE("composition: escort after relative escort is the product order") {
  const DensityModel f = make_exponential(2.0);
  const DensityModel h = make_exponential(1.0);
  const double alpha = 0.5, beta = 3.0;
  const TransformOutput inner = rel_diff_escort(f, h, alpha, 513);
  const TransformOutput composed = diff_escort(inner.density.as_density(), beta, 513);
  const TransformOutput direct = rel_diff_escort(f, h, alpha * beta, 513);
  // Compare pointwise at interior quantiles of the direct output.
  const auto ys = direct.density.nodes();
  for (std::size_t i = 8; i + 8 < ys.size(); i += 31) {
    const double y = ys[i];
    CHECK(close_rel(composed.density.pdf(y), direct.density.pdf(y), 1e-5));
  }
}

TEST_CASE("diff_escort basics") {
  const DensityModel f = make_exponential(1.0);
  const TransformOutput ident = diff_escort(f, 1.0, 129);
  for (double x : {0.2, 0.9, 2.0}) {
    CHECK(close_rel(ident.var_map(x), x, 1e-8));
    CHECK(close_rel(ident.density.pdf(x), f.pdf(x), 1e-7));
  }
  const TransformOutput uni = diff_escort(make_uniform(0.0, 1.0), 2.0, 129);
  for (double y : {0.15, 0.5, 0.85}) CHECK(close_abs(uni.density.pdf(y), 1.0, 1e-8));
}

TEST_CASE("inverse_scaling") {
  CHECK(close_rel(inverse_scaling(make_uniform(0.0, 2.5), 0.7), 2.5, 1e-9));
  CHECK(close_rel(inverse_scaling(make_uniform(0.0, 3.0), 1.0), 3.0, 1e-12));
  CHECK_THROWS_AS(inverse_scaling(make_gaussian(), 1.0), NotCompact);
  CHECK_THROWS_AS(inverse_scaling(make_gaussian(), 0.0), DomainError);
  // r(alpha, forward image) = 1.
  const DensityModel f = make_exponential(2.0);
  const DensityModel h = make_exponential(1.0);
  const TransformOutput t = rel_diff_escort(f, h, 0.7, 513);
  CHECK(close_abs(inverse_scaling(t.density.as_density(), 0.7), 1.0, 1e-6));
  // Divergent entropy power is reported as such: the tail of g_{p,lambda}
  // decays like |x|^{-p*/(1-lambda)}, so gamma = 1/2 diverges when that
  // exponent is half-integrable.
  const DensityModel heavy = make_stretched_gaussian(0.5, 0.7);
  CHECK_THROWS_AS(inverse_scaling(heavy, 2.0), EntropyPowerDivergent);
}

TEST_CASE("inverse after forward is the identity") {
  const DensityModel f = make_exponential(2.0);
  const DensityModel h = make_exponential(1.0);
  for (double alpha : {0.7, 1.0, 1.5}) {
    const TransformOutput t = rel_diff_escort(f, h, alpha, 513);
    const DensityModel back = inverse_rel_diff_escort(t.density.as_density(), h, alpha, 513);
    for (double u = 0.01; u < 0.995; u += 0.07) {
      const double x = -std::log(1.0 - u) / 2.0;  // quantile of exp(2)
      CHECK(close_rel(back.pdf(x), f.pdf(x), 1e-5));
    }
  }
}

TEST_CASE("forward after inverse is a scaling of the original") {
  // Compact g: the canonical anchoring maps supp(g)/r onto (0, L/r).
  const DensityModel g = make_stretched_gaussian(2.0, 2.0);
  const DensityModel h = make_gaussian();
  const double alpha = 2.0;
  const DensityModel fmin = inverse_rel_diff_escort(g, h, alpha, 257);
  const double r = inverse_scaling(g, alpha);
  const TransformOutput fwd = rel_diff_escort(fmin, h, alpha, 129);
  // Expected: r g(r y + g_lo) on (0, (g_hi - g_lo)/r).
  const double g_lo = g.support().lo();
  CHECK(close_rel(fwd.support_length, g.support().length() / r, 1e-5));
  const auto ys = fwd.density.nodes();
  for (std::size_t i = 16; i + 16 < ys.size(); i += 37) {
    const double y = ys[i];
    CHECK(close_rel(fwd.density.pdf(y), r * g.pdf(r * y + g_lo), 2e-5));
  }
}

TEST_CASE("inverse at alpha = 1 needs a compact input") {
  CHECK_THROWS_AS(inverse_rel_diff_escort(make_gaussian(), make_exponential(1.0), 1.0, 129),
                  NotCompact);
  CHECK_THROWS_AS(inverse_rel_diff_escort(make_uniform(0.0, 1.0), make_gaussian(), 0.0, 129),
                  DomainError);
}

TEST_CASE("normalization of transform outputs") {
  const DensityModel f = make_exponential(2.0);
  const DensityModel h = make_exponential(1.0);
  for (double alpha : {0.5, 1.5, 3.0}) {
    const TransformOutput t = rel_diff_escort(f, h, alpha, 513);
    const DensityModel td = t.density.as_density();
    const double m = integrate([&td](double y) { return td.pdf(y); }, td.support()).value;
    CHECK(close_abs(m, 1.0, 1e-6));
  }
  const DensityModel inv =
      inverse_rel_diff_escort(make_stretched_gaussian(2.0, 1.5), make_gaussian(), 2.0, 513);
  const double m = integrate([&inv](double x) { return inv.pdf(x); }, inv.support()).value;
  CHECK(close_abs(m, 1.0, 1e-6));
}

TEST_CASE("divergent lower mass: interior anchoring of the forward map") {
  // w = f^{-1} for f = 3x^2 on (0,1) diverges at 0; the map re-anchors and
  // the y support extends to -inf.
  const DensityModel f = make_power(2.0);
  const DensityModel h = make_uniform(0.0, 1.0);
  const TransformOutput t = rel_diff_escort(f, h, 2.0, 257);
  CHECK_FALSE(t.lower_anchored);
  CHECK(std::isinf(t.support_length));
  const DensityModel td = t.density.as_density();
  const double m = integrate([&td](double y) { return td.pdf(y); }, td.support()).value;
  CHECK(close_abs(m, 1.0, 1e-6));
}
