#pragma once

#include <cmath>
#include <optional>

#include "relesc/errors.hpp"
#include "relesc/interval.hpp"

namespace relesc {

/// Parameter tuple shared by the divergence/inequality machinery.
/// xi is always recomputed from (lambda, alpha); a caller-supplied xi that
/// disagrees is rejected.
struct ParamSet {
  double p = 2.0;
  double p_star = 2.0;
  double lambda = 1.0;
  double beta = 1.0;
  double alpha = 1.0;
  double xi = 1.0;

  static ParamSet from_pstar(double p_star, double lambda, double alpha,
                             std::optional<double> beta = std::nullopt) {
    ParamSet ps;
    ps.p_star = p_star;
    ps.p = p_star == 1.0 ? kInf : p_star / (p_star - 1.0);
    ps.lambda = lambda;
    ps.alpha = alpha;
    ps.beta = beta.value_or(lambda);
    ps.xi = xi_of(lambda, alpha);
    return ps;
  }

  static double xi_of(double lambda, double alpha) { return 1.0 + alpha * (lambda - 1.0); }

  static double conjugate(double a) {
    if (a == 1.0) return kInf;
    return a / (a - 1.0);
  }

  void validate_xi() const {
    if (std::abs(xi - xi_of(lambda, alpha)) > 1e-12 * (1.0 + std::abs(xi)))
      throw DomainError("xi does not match 1 + alpha (lambda - 1)");
  }

  /// sign(p* beta + lambda - 1) == sign(beta + 1 - lambda) != 0.
  bool sign_condition() const {
    const double a = p_star * beta + lambda - 1.0;
    const double b = beta + 1.0 - lambda;
    return a * b > 0.0;
  }

  /// Window of the moment-entropy inequality.
  bool em_window() const {
    return p_star >= 0.0 && alpha > 0.0 && lambda > 1.0 / (1.0 + p_star);
  }

  /// Window of the Stam-like inequality.
  bool stam_window() const { return p >= 1.0 && alpha > 0.0 && sign_condition(); }
};

}  // namespace relesc
