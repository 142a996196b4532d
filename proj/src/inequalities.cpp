#include "relesc/inequalities.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "relesc/density_spec.hpp"
#include "relesc/functionals.hpp"
#include "relesc/transform.hpp"

namespace relesc {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void attach_error_label(IneqReport& rep, double rel_err) {
  rep.notes += (rep.notes.empty() ? "" : "; ") + std::string("quad_rel_err~") + fmt(rel_err);
  if (std::isfinite(rep.ratio) && std::abs(rep.ratio - 1.0) <= std::max(1e-9, 3.0 * rel_err))
    rep.notes += "; sharp within numerical error";
}

}  // namespace

IneqReport check_moment_entropy(const DensityModel& f, const DensityModel& h,
                                const ParamSet& ps) {
  ps.validate_xi();
  IneqReport rep;
  rep.name = "em";
  rep.params = ps;
  if (!ps.em_window()) {
    rep.notes = "not applicable: need p* >= 0, alpha > 0, lambda > 1/(1+p*)";
    return rep;
  }
  if (ps.p_star == 0.0) {
    rep.notes = "not applicable: p* = 0 limit of the relative moment is not defined";
    return rep;
  }
  const double d_xi = renyi_div(f, h, ps.xi);
  const RelCumMoment mom = relative_cumulative_moment(f, h, ps.p_star, ps.alpha);
  if (!(mom.mu > 0.0)) throw DivergentMoment("relative cumulative moment vanished");
  const double k0 = sharp_constant_em(ps.p_star, ps.lambda);

  const double log_lhs = d_xi + std::log(mom.mu) / (ps.p_star * ps.alpha);
  const double log_rhs = std::log(k0) / ps.alpha;
  rep.lhs = std::exp(log_lhs);
  rep.rhs = std::exp(log_rhs);
  rep.ratio = std::exp(log_lhs - log_rhs);
  rep.applicable = true;
  attach_error_label(rep, mom.abs_err / mom.mu + 1e-9);
  return rep;
}

IneqReport check_stam(const DensityModel& f, const DensityModel& h, const ParamSet& ps) {
  ps.validate_xi();
  IneqReport rep;
  rep.name = "stam";
  rep.params = ps;
  if (!ps.stam_window()) {
    rep.notes = "not applicable: need p >= 1, alpha > 0 and the sign condition on beta";
    return rep;
  }
  if (densities_identical(f, h)) {
    rep.notes = "excluded: f = h (transformed density is uniform, not absolutely continuous)";
    return rep;
  }
  const double theta = 1.0 + ps.beta - ps.lambda;
  const RelFisher rf = relative_fisher(f, h, ps.p, ps.beta * ps.alpha);
  if (!(rf.F > 0.0)) throw DivergentFisher("relative Fisher divergence vanished");
  const double d_xi = renyi_div(f, h, ps.xi);
  const double log_phi = std::log(rf.F) / (ps.p * ps.beta * ps.alpha);
  const double log_lhs = theta * (log_phi - d_xi);
  rep.lhs = std::exp(log_lhs);
  rep.applicable = true;

  if (std::abs(ps.beta - ps.lambda) <= 1e-12) {
    const double k1 = sharp_constant_stam(ps.p_star, ps.lambda);
    const double log_rhs = ((ps.lambda - ps.beta - 1.0) / (ps.alpha * ps.beta)) *
                               std::log(ps.alpha) +
                           std::log(k1) / ps.alpha;
    rep.rhs = std::exp(log_rhs);
    rep.ratio = std::exp(log_lhs - log_rhs);
  } else {
    rep.notes = "bound constant unavailable for beta != lambda";
  }
  attach_error_label(rep, rf.abs_err / rf.F + 1e-9);
  return rep;
}

std::pair<IneqReport, IneqReport> check_shannon_variants(const DensityModel& f,
                                                         const DensityModel& h,
                                                         const ParamSet& ps) {
  ParamSet sh = ParamSet::from_pstar(ps.p_star, 1.0, ps.alpha, 1.0);
  IneqReport em = check_moment_entropy(f, h, sh);
  em.name = "em-shannon";
  IneqReport stam = check_stam(f, h, sh);
  stam.name = "stam-shannon";
  return {em, stam};
}

std::pair<IneqReport, IneqReport> check_adapted(const DensityModel& f,
                                                const AdaptedReference& ar, double alpha) {
  if (std::abs(alpha - ar.alpha) > 1e-12)
    throw DomainError("alpha must match the adapted reference");
  ParamSet ps = ParamSet::from_pstar(ar.p_star, ar.lambda, ar.alpha);
  IneqReport em = check_moment_entropy(f, ar.h_star, ps);
  em.name = "adapted-em";
  IneqReport stam = check_stam(f, ar.h_star, ps);
  stam.name = "adapted-stam";
  // The individual factors are minimized at f = h*, the products at f = f*.
  if (em.applicable) {
    const double d = renyi_div(f, ar.h_star, ps.xi);
    em.notes += (em.notes.empty() ? "" : "; ") + std::string("D_xi[f||h*]=") + fmt(d);
  }
  return {em, stam};
}

SmoothingCheck check_monotonicity(const DensityModel& f, const DensityModel& h, double alpha,
                                  double tau) {
  if (!(tau > 0.0)) throw DomainError("smoothing needs tau > 0");
  const TransformOutput t = rel_diff_escort(f, h, alpha);
  SmoothingCheck out;
  out.before = fisher_shannon(t.density);
  const GridDensity smoothed = gauss_convolve(t.density.as_density(), tau);
  out.after = fisher_shannon(smoothed);
  return out;
}

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse number '" + tok + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

std::string strip(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      if (section != "densities" && section != "grids" && section != "inequalities" &&
          section != "output")
        throw ConfigError("unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    std::string key = strip(eq == std::string::npos ? line : line.substr(0, eq));
    std::string value = eq == std::string::npos ? "" : strip(line.substr(eq + 1));

    if (section == "densities") {
      if (key != "pair") throw ConfigError("[densities] accepts 'pair = f | h' entries only");
      const auto bar = value.find('|');
      if (bar == std::string::npos) throw ConfigError("pair needs 'f | h'");
      cfg.pairs.emplace_back(strip(value.substr(0, bar)), strip(value.substr(bar + 1)));
    } else if (section == "grids") {
      if (key == "lambda")
        cfg.lambdas = parse_list(value);
      else if (key == "alpha")
        cfg.alphas = parse_list(value);
      else if (key == "pstar")
        cfg.p_star = parse_list(value).at(0);
      else if (key == "beta") {
        if (value == "lambda") {
          cfg.beta_equals_lambda = true;
        } else {
          cfg.beta_equals_lambda = false;
          cfg.beta = parse_list(value).at(0);
        }
      } else {
        throw ConfigError("unknown grid key '" + key + "'");
      }
    } else if (section == "inequalities") {
      if (key != "em" && key != "stam" && key != "em-shannon" && key != "stam-shannon")
        throw ConfigError("unknown inequality '" + key + "'");
      cfg.inequalities.push_back(key);
    } else if (section == "output") {
      if (key == "csv")
        cfg.csv_path = value;
      else if (key == "json")
        cfg.json_path = value;
      else
        throw ConfigError("unknown output key '" + key + "'");
    } else {
      throw ConfigError("entry before any section at line " + std::to_string(lineno));
    }
  }
  return cfg;
}

SweepConfig parse_sweep_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  return parse_sweep_config(in);
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, SweepSummary* summary, int jobs) {
  struct Cell {
    std::string ineq, f_spec, h_spec;
    double lambda, alpha;
  };
  std::vector<Cell> cells;
  for (const auto& ineq : cfg.inequalities)
    for (const auto& pr : cfg.pairs)
      for (double lam : cfg.lambdas)
        for (double al : cfg.alphas)
          cells.push_back({ineq, pr.first, pr.second, lam, al});

  std::vector<SweepRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& c = cells[i];
      SweepRow& row = rows[i];
      row.ineq = c.ineq;
      row.f_spec = c.f_spec;
      row.h_spec = c.h_spec;
      ParamSet ps = ParamSet::from_pstar(
          cfg.p_star, c.lambda, c.alpha,
          cfg.beta_equals_lambda ? std::optional<double>() : std::optional<double>(cfg.beta));
      try {
        const DensityModel f = parse_density_spec(c.f_spec);
        const DensityModel h = parse_density_spec(c.h_spec);
        if (c.ineq == "em") {
          row.report = check_moment_entropy(f, h, ps);
        } else if (c.ineq == "stam") {
          row.report = check_stam(f, h, ps);
        } else if (c.ineq == "em-shannon") {
          row.report = check_shannon_variants(f, h, ps).first;
        } else {
          row.report = check_shannon_variants(f, h, ps).second;
        }
      } catch (const Error& e) {
        row.report.name = c.ineq;
        row.report.params = ps;
        row.report.applicable = false;
        row.report.notes = std::string("error: ") + e.what();
      }
    }
  };
  if (jobs <= 1 || cells.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int n = std::min<std::size_t>(jobs, cells.size());
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (summary) {
    *summary = SweepSummary{};
    summary->cells = static_cast<int>(rows.size());
    for (const auto& row : rows) {
      if (!row.report.applicable) continue;
      ++summary->applicable;
      if (row.report.notes.find("sharp within numerical error") != std::string::npos)
        ++summary->sharp;
      if (std::isfinite(row.report.ratio) && row.report.ratio < 1.0 - 1e-9)
        ++summary->violations;
    }
  }
  return rows;
}

}  // namespace relesc
