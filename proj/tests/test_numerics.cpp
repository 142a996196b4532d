#include <doctest.h>

#include <cmath>
#include <random>

#include "relesc/numerics.hpp"
#include "relesc/quadrature.hpp"
#include "test_support.hpp"

using namespace relesc;
using namespace relesc::testing;

TEST_CASE("integrate: catalog normalizations and polynomials") {
  CHECK(close_abs(integrate([](double x) { return 2.0 * std::exp(-2.0 * x); },
                            Interval(0.0, kInf))
                      .value,
                  1.0, 1e-10));
  CHECK(close_abs(integrate([](double x) { return std::exp(-x * x) / std::sqrt(M_PI); },
                            real_line())
                      .value,
                  1.0, 1e-10));
  CHECK(close_abs(integrate([](double x) { return x; }, Interval(0.0, 1.0)).value, 0.5,
                  1e-12));
}

TEST_CASE("integrate: error contract") {
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, Interval(0.0, 1.0), -1.0, 1e-12),
                  DomainError);
  // NaN at interior nodes.
  CHECK_THROWS_AS(integrate([](double x) { return std::sqrt(x - 0.5); }, Interval(0.0, 1.0)),
                  NonFiniteEvaluand);
  // Divergent integral on an infinite interval reports tail growth.
  try {
    integrate([](double x) { return 1.0 / (1.0 + x); }, Interval(0.0, kInf));
    CHECK(false);
  } catch (const NonConvergence& e) {
    CHECK(e.tail_growth);
  }
}

TEST_CASE("integrate: integrable endpoint singularities") {
  // x^{-1/2} on (0,1) integrates to 2 with open panels.
  const QuadResult r = integrate([](double x) { return 1.0 / std::sqrt(x); },
                                 Interval(0.0, 1.0));
  CHECK(close_rel(r.value, 2.0, 1e-9));
}

TEST_CASE("integrate is linear on random combinations") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  auto g1 = [](double x) { return std::exp(-x); };
  auto g2 = [](double x) { return x * std::exp(-2.0 * x); };
  const Interval iv(0.0, kInf);
  const double i1 = integrate(g1, iv).value;
  const double i2 = integrate(g2, iv).value;
  for (int k = 0; k < 20; ++k) {
    const double a = coef(rng), b = coef(rng);
    const double combined =
        integrate([&](double x) { return a * g1(x) + b * g2(x); }, iv).value;
    CHECK(close_abs(combined, a * i1 + b * i2, 1e-8));
  }
}

TEST_CASE("cumulative_map: exponential analytic antiderivative") {
  auto cm = cumulative_map([](double x) { return 2.0 * std::exp(-2.0 * x); },
                           Interval(0.0, kInf), 257);
  CHECK(cm.lower_anchored);
  CHECK(close_rel(cm.total_mass, 1.0, 1e-9));
  // Node values carry full quadrature accuracy against Y(x) = 1 - e^{-2x};
  // between nodes the shape-preserving cubic is good to ~1e-7 at this count.
  const auto xs = cm.map.xs();
  const auto ys = cm.map.ys();
  for (std::size_t i = 0; i < xs.size(); i += 16)
    CHECK(close_abs(ys[i], 1.0 - std::exp(-2.0 * xs[i]), 1e-9));
  CHECK(close_abs(cm.map(std::log(2.0) / 2.0), 0.5, 1e-7));
  CHECK(close_abs(cm.map(1.0), 1.0 - std::exp(-2.0), 1e-7));
}

TEST_CASE("cumulative_map: identity on the unit interval") {
  auto cm = cumulative_map([](double) { return 1.0; }, Interval(0.0, 1.0), 33);
  for (double x : {0.1, 0.25, 0.6, 0.9}) CHECK(close_abs(cm.map(x), x, 1e-10));
}

TEST_CASE("cumulative_map: mixed-power weight of the exponential pair") {
  // w = f^{1-alpha} h^alpha for f = 2 e^{-2x}, h = e^{-x}, alpha = 3/2:
  // total mass 2^{-1/2} / (1/2) = sqrt(2).
  const double alpha = 1.5;
  auto w = [alpha](double x) {
    // 2^{1-alpha} e^{-(2-alpha) x}, written through the exponent to stay
    // finite where the plain pdf would underflow under a negative power.
    return std::exp((1.0 - alpha) * (std::log(2.0) - 2.0 * x) - alpha * x);
  };
  auto cm = cumulative_map(w, Interval(0.0, kInf), 64);
  CHECK(close_rel(cm.total_mass, std::sqrt(2.0), 1e-8));
  const QuadResult direct = integrate(w, Interval(0.0, kInf));
  CHECK(close_rel(cm.total_mass, direct.value, 1e-9));
}

TEST_CASE("cumulative_map: divergent lower endpoint re-anchors") {
  auto cm = cumulative_on_nodes(
      [](double x) { return 1.0 / (x * x); }, Interval(0.0, 1.0),
      {0.001, 0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9}, default_quad_options());
  CHECK_FALSE(cm.lower_anchored);
  CHECK(cm.map.y_at_x_min() == 0.0);
  CHECK(std::isinf(cm.total_mass));
  // Increments still match the antiderivative -1/x between nodes.
  CHECK(close_rel(cm.map(0.5) - cm.map(0.1), 10.0 - 2.0, 1e-9));
}

TEST_CASE("cumulative_map: strictly increasing at every node pair") {
  auto cm = cumulative_map([](double x) { return std::exp(-x * x) / std::sqrt(M_PI); },
                           real_line(), 129);
  const auto ys = cm.map.ys();
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) CHECK(ys[i] < ys[i + 1]);
}

TEST_CASE("invert_monotone: identity and analytic inverse") {
  CHECK(close_abs(invert_monotone([](double x) { return x; }, 0.0, 1.0, 0.25, 1e-12), 0.25,
                  1e-10));
  const double x = invert_monotone([](double t) { return 1.0 - std::exp(-2.0 * t); }, 0.0,
                                   40.0, 0.5, 1e-13);
  CHECK(close_abs(x, std::log(2.0) / 2.0, 1e-9));
  CHECK(close_abs(invert_monotone([](double t) { return t * t * t; }, -2.0, 2.0, -1.0, 1e-13),
                  -1.0, 1e-9));
  CHECK_THROWS_AS(invert_monotone([](double t) { return t; }, 0.0, 1.0, 2.0, 1e-12),
                  TargetOutOfRange);
}

TEST_CASE("map inversion round trip at random points") {
  auto cm = cumulative_map([](double x) { return 2.0 * std::exp(-2.0 * x); },
                           Interval(0.0, kInf), 257);
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> u(cm.map.x_min(), 5.0);
  for (int k = 0; k < 100; ++k) {
    const double x = u(rng);
    const double y = cm.map(x);
    CHECK(close_abs(cm.map.inverse(y), x, 1e-9 * (1.0 + std::abs(x)) * 10.0));
  }
}

TEST_CASE("monotone map rejects non-monotone ordinates") {
  CHECK_THROWS_AS(MonotoneMap({0.0, 1.0, 2.0}, {0.0, 2.0, 1.0}), InconsistentGrid);
  CHECK_THROWS_AS(cumulative_map([](double) { return 1.0; }, Interval(0.0, 1.0), 8),
                  DomainError);
}
