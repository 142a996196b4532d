#include "relesc/grid_density.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace relesc {

GridDensity::GridDensity(Interval support, std::vector<double> nodes,
                         std::vector<double> pdf_at_nodes, std::vector<double> cdf_at_nodes,
                         std::string kind)
    : support_(support), nodes_(std::move(nodes)), pdf_(std::move(pdf_at_nodes)),
      kind_(std::move(kind)) {
  if (nodes_.size() < 16) throw InconsistentGrid("grid density needs at least 16 nodes");
  if (pdf_.size() != nodes_.size() || cdf_at_nodes.size() != nodes_.size())
    throw InconsistentGrid("grid density node/pdf/cdf lengths differ");
  std::vector<double> logp(pdf_.size());
  for (std::size_t i = 0; i < pdf_.size(); ++i) {
    if (!(pdf_[i] > 0.0) || !std::isfinite(pdf_[i]))
      throw InconsistentGrid("grid density pdf values must be positive and finite");
    logp[i] = std::log(pdf_[i]);
  }
  log_pdf_ = PchipInterpolant(nodes_, std::move(logp));
  cdf_ = MonotoneMap(nodes_, std::move(cdf_at_nodes));
  if (std::abs(cdf_.y_at_x_max() - 1.0) > 1e-3)
    throw InconsistentGrid("grid density cumulative does not reach unit mass");
  // Secant slopes of the outer segments, used to extend the log-pdf over
  // the (tiny-mass) slivers between the node range and the declared support:
  // linearly toward an infinite endpoint, as a power of the remaining gap
  // toward a finite one (transform outputs vanish like powers there).
  const std::size_t n = nodes_.size();
  const auto lp = log_pdf_.ys();
  lo_slope_ = (lp[1] - lp[0]) / (nodes_[1] - nodes_[0]);
  hi_slope_ = (lp[n - 1] - lp[n - 2]) / (nodes_[n - 1] - nodes_[n - 2]);
  if (support_.lo_finite() && nodes_.front() - support_.lo() > 0.0) {
    const double u1 = nodes_[0] - support_.lo();
    const double u2 = nodes_[1] - support_.lo();
    lo_kappa_ = (lp[1] - lp[0]) / (std::log(u2) - std::log(u1));
  }
  if (support_.hi_finite() && support_.hi() - nodes_.back() > 0.0) {
    const double u1 = support_.hi() - nodes_[n - 1];
    const double u2 = support_.hi() - nodes_[n - 2];
    hi_kappa_ = (lp[n - 2] - lp[n - 1]) / (std::log(u2) - std::log(u1));
  }
}

double GridDensity::extrapolated_log_pdf(double y) const {
  const auto lp = log_pdf_.ys();
  if (y < nodes_.front()) {
    if (support_.lo_finite()) {
      const double u = y - support_.lo();
      const double u0 = nodes_.front() - support_.lo();
      if (!(u > 0.0) || !(u0 > 0.0))
        return lp.front() + lo_slope_ * (y - nodes_.front());
      return lp.front() + lo_kappa_ * (std::log(u) - std::log(u0));
    }
    // Unbounded below needs growth toward the interior to stay integrable.
    if (!(lo_slope_ > 0.0)) return -kInf;
    return lp.front() + lo_slope_ * (y - nodes_.front());
  }
  if (support_.hi_finite()) {
    const double u = support_.hi() - y;
    const double u0 = support_.hi() - nodes_.back();
    if (!(u > 0.0) || !(u0 > 0.0)) return lp.back() + hi_slope_ * (y - nodes_.back());
    return lp.back() + hi_kappa_ * (std::log(u) - std::log(u0));
  }
  if (!(hi_slope_ < 0.0)) return -kInf;
  return lp.back() + hi_slope_ * (y - nodes_.back());
}

double GridDensity::pdf(double y) const {
  if (!support_.contains(y)) return 0.0;
  if (exact_pdf_) return exact_pdf_(y);
  if (y < nodes_.front() || y > nodes_.back())
    return std::exp(extrapolated_log_pdf(y));
  return std::exp(log_pdf_(y));
}

double GridDensity::log_pdf(double y) const {
  if (!support_.contains(y)) return -kInf;
  if (exact_pdf_) {
    const double v = exact_pdf_(y);
    return v > 0.0 ? std::log(v) : -kInf;
  }
  if (y < nodes_.front() || y > nodes_.back()) return extrapolated_log_pdf(y);
  return log_pdf_(y);
}

double GridDensity::deriv(double y) const {
  if (!support_.contains(y)) return 0.0;
  if (exact_deriv_) return exact_deriv_(y);
  if (y < nodes_.front() || y > nodes_.back())
    return std::exp(extrapolated_log_pdf(y)) *
           (y < nodes_.front() ? lo_slope_ : hi_slope_);
  return std::exp(log_pdf_(y)) * log_pdf_.derivative(y);
}

double GridDensity::log_deriv(double y) const {
  if (exact_deriv_ && exact_pdf_) return exact_deriv_(y) / exact_pdf_(y);
  if (y < nodes_.front()) return lo_slope_;
  if (y > nodes_.back()) return hi_slope_;
  return log_pdf_.derivative(y);
}

double GridDensity::cdf(double y) const { return cdf_(y); }

double GridDensity::quantile(double u) const { return cdf_.inverse(u); }

void GridDensity::set_exact(DensityModel::Fn pdf_fn, DensityModel::Fn deriv_fn) {
  exact_pdf_ = std::move(pdf_fn);
  exact_deriv_ = std::move(deriv_fn);
}

DensityModel GridDensity::as_density() const {
  auto self = std::make_shared<const GridDensity>(*this);
  return DensityModel(
      support_, [self](double y) { return self->pdf(y); },
      [self](double y) { return self->log_deriv(y); },
      [self](double y) { return self->deriv(y); }, kind_,
      [self](double y) { return self->log_pdf(y); });
}

GridDensity grid_density_from_map(const MonotoneMap& cumulative,
                                  const std::vector<double>& pdf_at_nodes) {
  const auto xs = cumulative.xs();
  if (xs.size() != pdf_at_nodes.size())
    throw InconsistentGrid("pdf values do not match map nodes");
  std::vector<double> nodes(xs.begin(), xs.end());
  std::vector<double> cdf(cumulative.ys().begin(), cumulative.ys().end());
  const Interval support(nodes.front(), nodes.back());
  return GridDensity(support, std::move(nodes), std::vector<double>(pdf_at_nodes),
                     std::move(cdf));
}

GridDensity grid_density_from_pdf(const DensityModel::Fn& pdf, const Interval& support,
                                  int n_nodes, const std::string& kind) {
  CumulativeOptions opt;
  opt.n_nodes = n_nodes;
  // Keep nodes strictly interior: open-support pdfs vanish at finite
  // endpoints, and the node range must still carry all but ~1e-9 mass.
  opt.mass_fractions.resize(n_nodes);
  for (int k = 0; k < n_nodes; ++k)
    opt.mass_fractions[k] =
        1e-9 + (1.0 - 2e-9) * static_cast<double>(k) / (n_nodes - 1);
  CumulativeMap cm = cumulative_map(pdf, support, opt);
  const auto xs = cm.map.xs();
  const auto ys = cm.map.ys();
  std::vector<double> nodes, pvals, cvals;
  nodes.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double p = pdf(xs[i]);
    if (!(p > 0.0) || !std::isfinite(p)) continue;
    nodes.push_back(xs[i]);
    pvals.push_back(p / cm.total_mass);
    cvals.push_back(ys[i] / cm.total_mass);
  }
  return GridDensity(support, std::move(nodes), std::move(pvals), std::move(cvals), kind);
}

GridDensity grid_density_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecSyntax("cannot open grid CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw SpecSyntax("grid CSV is empty: " + path);
  // Header row required.
  if (line.find_first_not_of("0123456789.,+-eE \t\r") == std::string::npos)
    throw SpecSyntax("grid CSV must start with a header row");

  std::vector<double> ys, ps;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b))
      throw SpecSyntax("grid CSV row " + std::to_string(lineno) + " needs two columns");
    try {
      ys.push_back(std::stod(a));
      ps.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw SpecSyntax("grid CSV row " + std::to_string(lineno) + " is not numeric");
    }
  }
  if (ys.size() < 16) throw SpecParam("grid CSV needs at least 16 rows");
  for (std::size_t i = 0; i + 1 < ys.size(); ++i)
    if (!(ys[i] < ys[i + 1])) throw SpecParam("grid CSV y column must be strictly increasing");
  for (double p : ps)
    if (!(p > 0.0)) throw SpecParam("grid CSV pdf column must be positive");

  // Interpolate in log space, integrate for the cumulative, renormalize.
  std::vector<double> logp(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) logp[i] = std::log(ps[i]);
  PchipInterpolant interp(ys, logp);
  const Interval supp(ys.front(), ys.back());
  auto pdf_fn = [interp](double y) { return std::exp(interp(y)); };
  std::vector<double> cdf(ys.size(), 0.0);
  for (std::size_t i = 1; i < ys.size(); ++i)
    cdf[i] = cdf[i - 1] + integrate(pdf_fn, Interval(ys[i - 1], ys[i])).value;
  const double total = cdf.back();
  if (!(total > 0.0)) throw SpecParam("grid CSV carries no mass");
  std::vector<double> pvals(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    pvals[i] = ps[i] / total;
    cdf[i] /= total;
  }
  return GridDensity(supp, ys, std::move(pvals), std::move(cdf), "grid:" + path);
}

}  // namespace relesc
