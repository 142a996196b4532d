#pragma once

#include <string>
#include <vector>

#include "relesc/density.hpp"
#include "relesc/interpolation.hpp"
#include "relesc/numerics.hpp"

namespace relesc {

/// Grid-backed density: log-pdf interpolated between nodes (positivity is
/// automatic and tails resolve better in log space), with the cumulative
/// stored as a monotone node map. Nodes cover all but a vanishing tail mass;
/// the pdf is zero outside the node range.
class GridDensity {
 public:
  GridDensity() = default;
  GridDensity(Interval support, std::vector<double> nodes, std::vector<double> pdf_at_nodes,
              std::vector<double> cdf_at_nodes, std::string kind = "grid");

  double pdf(double y) const;
  double log_pdf(double y) const;
  double deriv(double y) const;
  double log_deriv(double y) const;
  double cdf(double y) const;
  /// y with cdf(y) = u.
  double quantile(double u) const;

  const Interval& support() const { return support_; }
  const MonotoneMap& cumulative() const { return cdf_; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> pdf_nodes() const { return pdf_; }

  /// Replaces interpolated evaluation by exact closures (the node grid keeps
  /// serving the cumulative); used when pointwise values are computable
  /// directly, e.g. convolution outputs.
  void set_exact(DensityModel::Fn pdf_fn, DensityModel::Fn deriv_fn);

  /// View as a DensityModel (shares the interpolants / exact closures).
  DensityModel as_density() const;

 private:
  double extrapolated_log_pdf(double y) const;

  Interval support_{0.0, 1.0};
  std::vector<double> nodes_;
  std::vector<double> pdf_;
  PchipInterpolant log_pdf_;
  MonotoneMap cdf_;
  double lo_slope_ = 0.0;
  double hi_slope_ = 0.0;
  double lo_kappa_ = 0.0;
  double hi_kappa_ = 0.0;
  DensityModel::Fn exact_pdf_;
  DensityModel::Fn exact_deriv_;
  std::string kind_ = "grid";
};

/// Assembles a GridDensity from a cumulative node map plus the density values
/// at its nodes. Requires >= 16 nodes, positive pdf values, matching lengths.
GridDensity grid_density_from_map(const MonotoneMap& cumulative,
                                  const std::vector<double>& pdf_at_nodes);

/// Builds a grid density from a positive pdf closure by integrating it over
/// the support (equal-mass node placement).
GridDensity grid_density_from_pdf(const DensityModel::Fn& pdf, const Interval& support,
                                  int n_nodes = 513, const std::string& kind = "grid");

/// Loads a `y,pdf` CSV (header required, >= 16 rows), renormalizing to unit
/// mass. The support is the node range.
GridDensity grid_density_from_csv(const std::string& path);

}  // namespace relesc
