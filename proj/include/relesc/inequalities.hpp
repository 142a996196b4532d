#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "relesc/density.hpp"
#include "relesc/minimizers.hpp"
#include "relesc/params.hpp"

namespace relesc {

/// One evaluated inequality instance. All inequalities here are lower
/// bounds, so ratio = lhs/rhs >= 1 - 1e-9 whenever applicable and finite.
struct IneqReport {
  std::string name;
  ParamSet params;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  double ratio = std::numeric_limits<double>::quiet_NaN();
  bool applicable = false;
  std::string notes;
};

/// Moment-entropy-like bound: e^{D_xi} sigma_{p*,alpha}[f||h] >= K0^{1/alpha}.
IneqReport check_moment_entropy(const DensityModel& f, const DensityModel& h,
                                const ParamSet& ps);

/// Stam-like bound:
/// [e^{-D_xi} phi_{p,beta alpha}[f||h]]^{1+beta-lambda}
///   >= alpha^{(lambda-beta-1)/(alpha beta)} K1^{1/alpha}.
/// The bound constant is available at beta = lambda only; f = h is excluded.
IneqReport check_stam(const DensityModel& f, const DensityModel& h, const ParamSet& ps);

/// The lambda = 1 specializations (Shannon entropy / Kullback-Leibler forms).
std::pair<IneqReport, IneqReport> check_shannon_variants(const DensityModel& f,
                                                         const DensityModel& h,
                                                         const ParamSet& ps);

/// Adapted inequalities: the parent checks with the reference h* substituted.
std::pair<IneqReport, IneqReport> check_adapted(const DensityModel& f,
                                                const AdaptedReference& ar, double alpha);

struct SmoothingCheck {
  double before = 0.0;
  double after = 0.0;
};

/// Fisher-Shannon complexity of the transformed density before and after
/// Gaussian smoothing of variance tau; smoothing never increases it.
SmoothingCheck check_monotonicity(const DensityModel& f, const DensityModel& h, double alpha,
                                  double tau);

struct SweepConfig {
  std::vector<std::pair<std::string, std::string>> pairs;  // density spec strings (f, h)
  std::vector<double> lambdas;
  std::vector<double> alphas;
  double p_star = 2.0;
  bool beta_equals_lambda = true;
  double beta = 1.0;  // used when beta_equals_lambda is false
  std::vector<std::string> inequalities;
  std::string csv_path;
  std::string json_path;
};

SweepConfig parse_sweep_config(std::istream& in);
SweepConfig parse_sweep_config_file(const std::string& path);

struct SweepRow {
  std::string ineq;
  std::string f_spec, h_spec;
  IneqReport report;
};

struct SweepSummary {
  int cells = 0;
  int applicable = 0;
  int sharp = 0;
  int violations = 0;
};

/// Evaluates the Cartesian product of the configured grids. Cells are
/// independent; failures are recorded per cell and never abort the sweep.
/// The result order is deterministic regardless of the worker count.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg, SweepSummary* summary = nullptr,
                                int jobs = 1);

}  // namespace relesc
