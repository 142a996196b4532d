#pragma once

#include <stdexcept>
#include <string>

namespace relesc {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An argument fell outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

/// Adaptive quadrature hit its subdivision cap before reaching tolerance.
struct NonConvergence : Error {
  double value_estimate = 0.0;
  double error_estimate = 0.0;
  bool tail_growth = false;  // integrand still growing toward an infinite endpoint
  NonConvergence(const std::string& msg, double value, double err, bool growth)
      : Error(msg), value_estimate(value), error_estimate(err), tail_growth(growth) {}
};

/// The integrand produced NaN or +/-inf at an interior quadrature node.
struct NonFiniteEvaluand : Error {
  using Error::Error;
};

struct TargetOutOfRange : Error {
  using Error::Error;
};

struct SupportMismatch : Error {
  using Error::Error;
};

struct MissingDerivative : Error {
  using Error::Error;
};

struct InconsistentGrid : Error {
  using Error::Error;
};

struct NotNormalizable : Error {
  using Error::Error;
};

struct DivergentMoment : Error {
  using Error::Error;
};

struct DivergentEntropy : Error {
  using Error::Error;
};

struct DivergentFisher : Error {
  using Error::Error;
};

struct DivergentDivergence : Error {
  using Error::Error;
};

struct EntropyPowerDivergent : Error {
  using Error::Error;
};

struct NotCompact : Error {
  using Error::Error;
};

struct BranchUnavailable : Error {
  using Error::Error;
};

struct NormalizationFailure : Error {
  using Error::Error;
};

struct NotApplicable : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct SpecSyntax : Error {
  using Error::Error;
};

struct SpecParam : Error {
  using Error::Error;
};

}  // namespace relesc
