#include <doctest.h>

#include <cmath>
#include <random>

#include "relesc/specfun.hpp"
#include "test_support.hpp"

using namespace relesc;
using namespace relesc::testing;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("tsallis_exp: limits and clamping") {
  CHECK(close_rel(tsallis_exp(1.0, 2.0), std::exp(2.0), 1e-14));
  CHECK(tsallis_exp(0.5, 0.0) == 1.0);
  CHECK(tsallis_exp(0.0, 3.0) == 4.0);
  CHECK(tsallis_exp(0.0, -2.0) == 0.0);
  // Continuity at lambda = 1.
  CHECK(close_abs(tsallis_exp(1.0 + 1e-7, 2.0), std::exp(2.0), 1e-8));
  CHECK(close_abs(tsallis_exp(1.0 - 1e-7, 2.0), std::exp(2.0), 1e-8));
}

TEST_CASE("tsallis_exp is nondecreasing on its effective domain") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> lam(-1.0, 3.0);
  std::uniform_real_distribution<double> arg(-5.0, 5.0);
  for (int k = 0; k < 50; ++k) {
    const double l = lam(rng);
    double a = arg(rng), b = arg(rng);
    if (a > b) std::swap(a, b);
    if (l > 1.0) {
      // Effective domain ends at the pole x = 1/(l - 1).
      const double pole = 1.0 / (l - 1.0);
      a = std::min(a, pole * (1.0 - 1e-9));
      b = std::min(b, pole * (1.0 - 1e-9));
      if (a > b) std::swap(a, b);
    }
    CHECK(tsallis_exp(l, a) <= tsallis_exp(l, b) + 1e-12);
  }
}

TEST_CASE("arcsin_pq: classical case and series oracle") {
  const GtfParams classical{2.0, 2.0};
  CHECK(close_abs(arcsin_pq(classical, 0.5), kPi / 6.0, 1e-12));
  CHECK(arcsin_pq(classical, 0.0) == 0.0);
  CHECK(close_abs(arcsin_pq(classical, 1.0), kPi / 2.0, 1e-10));
  CHECK_THROWS_AS(arcsin_pq(classical, 1.5), DomainError);
  CHECK_THROWS_AS(arcsin_pq(classical, -0.1), DomainError);

  // Hypergeometric series cross-check, including the near-endpoint split.
  const GtfParams gp{3.0, 4.0};
  CHECK(close_rel(arcsin_pq(gp, 0.9), arcsin_pq_series(3.0, 4.0, 0.9, 1e-16), 1e-12));
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> pq(1.2, 5.0);
  std::uniform_real_distribution<double> zz(0.0, 0.95);
  for (int k = 0; k < 40; ++k) {
    const double p = pq(rng), q = pq(rng), z = zz(rng);
    CHECK(close_rel(arcsin_pq({p, q}, z), arcsin_pq_series(p, q, z), 1e-10));
  }
}

TEST_CASE("arcsin_pq: negative first index stays bounded") {
  // Exponent -1/p > 0: the integrand is bounded, arcsin(1) finite.
  const GtfParams gp{-1.0, 2.0};
  CHECK(close_abs(arcsin_pq(gp, 1.0), 1.0 - 1.0 / 3.0, 1e-11));  // int (1-t^2) dt
  // 0 < p <= 1: the quarter period diverges.
  CHECK(std::isinf(gtf_quarter_period({1.0, 2.0})));
}

TEST_CASE("sin_pq and cos_pq: classical agreement") {
  const GtfParams classical{2.0, 2.0};
  CHECK(close_abs(sin_pq(classical, kPi / 6.0), 0.5, 1e-12));
  for (double z : {0.05, 0.3, 0.7, 1.1, 1.5}) {
    CHECK(close_abs(sin_pq(classical, z), std::sin(z), 1e-12));
    CHECK(close_abs(cos_pq(classical, z), std::cos(z), 1e-12));
  }
  CHECK(close_abs(sin_pq(classical, -0.4), -std::sin(0.4), 1e-12));
  CHECK(cos_pq({3.7, 2.2}, 0.0) == 1.0);
  CHECK_THROWS_AS(sin_pq(classical, 2.0), DomainError);
}

TEST_CASE("Pythagorean identity for random indices") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> pq(1.2, 6.0);
  std::uniform_real_distribution<double> frac(0.02, 0.98);
  for (int k = 0; k < 200; ++k) {
    const GtfParams gp{pq(rng), pq(rng)};
    const double z = frac(rng) * gtf_quarter_period(gp);
    const double s = sin_pq(gp, z);
    const double c = cos_pq(gp, z);
    CHECK(close_abs(std::pow(c, gp.p) + std::pow(s, gp.q), 1.0, 1e-10));
  }
}

TEST_CASE("d/dz sin_pq equals cos_pq by central differences") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> pq(1.3, 4.0);
  std::uniform_real_distribution<double> frac(0.1, 0.9);
  for (int k = 0; k < 50; ++k) {
    const GtfParams gp{pq(rng), pq(rng)};
    const double z = frac(rng) * gtf_quarter_period(gp);
    const double hstep = 1e-5;
    const double fd = (sin_pq(gp, z + hstep) - sin_pq(gp, z - hstep)) / (2.0 * hstep);
    CHECK(close_abs(fd, cos_pq(gp, z), 1e-6));
  }
}

TEST_CASE("hyperbolic family: classical case and identity") {
  const GtfParams classical{2.0, 2.0};
  CHECK(close_abs(sinh_pq(classical, 1.0), std::sinh(1.0), 1e-11));
  CHECK(cosh_pq({2.7, 1.9}, 0.0) == 1.0);

  const GtfParams gp{2.0, 3.0};
  const double z = 0.8;
  const double s = sinh_pq(gp, z);
  const double c = cosh_pq(gp, z);
  CHECK(close_abs(std::pow(c, gp.p) - std::pow(s, gp.q), 1.0, 1e-10));

  // Saturating range: q/p > 1 gives a finite asymptotic range.
  const GtfParams sat{1.25, 2.0};
  const double range = gtf_asymptotic_range(sat);
  CHECK(std::isfinite(range));
  CHECK_THROWS_AS(sinh_pq(sat, range * 1.01), DomainError);
  CHECK(std::isinf(gtf_asymptotic_range({2.0, 2.0})));
}

TEST_CASE("hyperbolic Pythagorean identity on random indices") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> pq(1.2, 5.0);
  std::uniform_real_distribution<double> zz(0.05, 2.5);
  for (int k = 0; k < 200; ++k) {
    const GtfParams gp{pq(rng), pq(rng)};
    double z = zz(rng);
    const double range = gtf_asymptotic_range(gp);
    if (std::isfinite(range)) z = std::min(z, 0.8 * range);
    const double s = sinh_pq(gp, z);
    const double c = cosh_pq(gp, z);
    // Near saturation sinh^q is huge; the residual scales with it.
    const double scale = std::max(1.0, std::pow(s, gp.q));
    CHECK(close_abs(std::pow(c, gp.p) - std::pow(s, gp.q), 1.0, 1e-10 * scale));
  }
}

TEST_CASE("lower incomplete gamma: closed forms") {
  // gamma(1, x) = 1 - e^{-x}.
  for (double x : {0.1, 0.5, 1.0, 3.0})
    CHECK(close_rel(lower_inc_gamma(1.0, x), 1.0 - std::exp(-x), 1e-13));
  CHECK(lower_inc_gamma(0.7, 0.0) == 0.0);
  CHECK(lower_inc_gamma(2.5, 0.0) == 0.0);
  // gamma(1/2, x) = sqrt(pi) erf(sqrt(x)).
  CHECK(close_rel(lower_inc_gamma(0.5, 1.0), std::sqrt(kPi) * std::erf(1.0), 1e-12));
  // Inverse: gamma(1, x) = 1/2 at x = ln 2.
  CHECK(close_rel(inv_lower_inc_gamma(1.0, 0.5), std::log(2.0), 1e-12));
  CHECK_THROWS_AS(inv_lower_inc_gamma(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(inv_lower_inc_gamma(-1.0, 0.5), DomainError);
}

TEST_CASE("incomplete gamma inverse round trip") {
  std::mt19937 rng(5150);
  std::uniform_real_distribution<double> ss(0.2, 4.0);
  std::uniform_real_distribution<double> uu(1e-6, 0.999);
  for (int k = 0; k < 100; ++k) {
    const double s = ss(rng);
    const double y = uu(rng) * std::tgamma(s);
    const double x = inv_lower_inc_gamma(s, y);
    CHECK(close_rel(lower_inc_gamma(s, x), y, 1e-10));
  }
}

TEST_CASE("erf_inv") {
  CHECK(std::erf(0.0) == 0.0);
  CHECK(close_abs(erf_inv(std::erf(1.3)), 1.3, 1e-10));
  CHECK(close_abs(std::erf(10.0), 1.0, 1e-15));
  CHECK_THROWS_AS(erf_inv(1.0), DomainError);
  CHECK_THROWS_AS(erf_inv(-1.1), DomainError);
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> yy(-0.999, 0.999);
  for (int k = 0; k < 200; ++k) {
    const double y = yy(rng);
    CHECK(close_abs(std::erf(erf_inv(y)), y, 1e-12));
  }
}
