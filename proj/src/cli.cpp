#include "relesc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "relesc/density_spec.hpp"
#include "relesc/functionals.hpp"
#include "relesc/inequalities.hpp"
#include "relesc/minimizers.hpp"
#include "relesc/specfun.hpp"
#include "relesc/transform.hpp"

namespace relesc {

namespace {

std::string f17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int error_code(const Error& e) {
  if (dynamic_cast<const NonConvergence*>(&e) || dynamic_cast<const NonFiniteEvaluand*>(&e) ||
      dynamic_cast<const DivergentMoment*>(&e) || dynamic_cast<const DivergentEntropy*>(&e) ||
      dynamic_cast<const DivergentFisher*>(&e) ||
      dynamic_cast<const DivergentDivergence*>(&e) ||
      dynamic_cast<const EntropyPowerDivergent*>(&e) ||
      dynamic_cast<const NotCompact*>(&e) || dynamic_cast<const NotNormalizable*>(&e) ||
      dynamic_cast<const NormalizationFailure*>(&e))
    return 3;
  if (dynamic_cast<const BranchUnavailable*>(&e) || dynamic_cast<const NotApplicable*>(&e))
    return 2;
  return 1;
}

std::map<std::string, double> parse_params_arg(const std::string& text) {
  std::map<std::string, double> kv;
  if (text.empty()) return kv;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw SpecSyntax("--params expects key=value pairs, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (key != "p" && key != "pstar" && key != "lambda" && key != "alpha" && key != "beta" &&
        key != "xi" && key != "tau")
      throw SpecSyntax("unknown --params key '" + key + "'");
    try {
      kv[key] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw SpecSyntax("cannot parse value in '" + item + "'");
    }
  }
  return kv;
}

double kv_or(const std::map<std::string, double>& kv, const std::string& key, double dflt) {
  auto it = kv.find(key);
  return it == kv.end() ? dflt : it->second;
}

void write_report_csv(std::ostream& os, const IneqReport& rep) {
  os << "name,lhs,rhs,ratio,applicable,notes\n";
  std::string notes = rep.notes;
  for (char& c : notes)
    if (c == ',') c = ';';
  os << rep.name << ',' << f17(rep.lhs) << ',' << f17(rep.rhs) << ',' << f17(rep.ratio) << ','
     << (rep.applicable ? "true" : "false") << ',' << notes << '\n';
}

// Sample points of a density at its own mass quantiles (deterministic).
std::vector<double> sample_points(const DensityModel& d, int n) {
  const CumulativeMap cm =
      cumulative_map([d](double x) { return d.pdf(x); }, d.support(), std::max(n, 16));
  return {cm.map.xs().begin(), cm.map.xs().end()};
}

int cmd_gtf(const std::string& fn, double p, double q, double z, std::ostream& out) {
  const GtfParams gp{p, q};
  double v;
  if (fn == "sin")
    v = sin_pq(gp, z);
  else if (fn == "cos")
    v = cos_pq(gp, z);
  else if (fn == "sinh")
    v = sinh_pq(gp, z);
  else if (fn == "cosh")
    v = cosh_pq(gp, z);
  else if (fn == "arcsin")
    v = arcsin_pq(gp, z);
  else if (fn == "arcsinh")
    v = arcsinh_pq(gp, z);
  else
    throw SpecSyntax("unknown gtf function '" + fn + "'");
  out << f17(v) << '\n';
  return 0;
}

int cmd_functional(const std::string& name, const std::string& f_spec,
                   const std::string& h_spec, const std::map<std::string, double>& kv,
                   std::ostream& out) {
  const DensityModel f = parse_density_spec(f_spec);
  std::optional<DensityModel> h;
  if (!h_spec.empty()) h = parse_density_spec(h_spec);
  auto need_h = [&]() -> const DensityModel& {
    if (!h) throw SpecSyntax("functional '" + name + "' needs --h");
    return *h;
  };
  const double p = kv_or(kv, "p", 2.0);
  const double lambda = kv_or(kv, "lambda", 1.0);
  const double alpha = kv_or(kv, "alpha", 1.0);
  const double xi = ParamSet::xi_of(lambda, alpha);
  if (kv.count("xi") && std::abs(kv.at("xi") - xi) > 1e-12 * (1.0 + std::abs(xi)))
    throw DomainError("supplied xi disagrees with 1 + alpha (lambda - 1)");

  double value;
  double abs_err = -1.0;
  if (name == "deviation") {
    value = deviation(f, p);
  } else if (name == "renyi") {
    value = renyi_entropy_power(f, lambda);
  } else if (name == "shannon") {
    value = shannon_entropy(f);
  } else if (name == "tsallis") {
    value = tsallis_entropy(f, lambda);
  } else if (name == "fisher") {
    value = fisher_plam(f, p, lambda);
  } else if (name == "kxi") {
    const Evaluated e = k_xi_est(f, need_h(), xi);
    value = e.value;
    abs_err = e.abs_err;
  } else if (name == "renyi-div") {
    value = renyi_div(f, need_h(), xi);
  } else if (name == "kl") {
    const Evaluated e = kl_div_est(f, need_h());
    value = e.value;
    abs_err = e.abs_err;
  } else if (name == "rel-fisher") {
    value = relative_fisher(f, need_h(), p, lambda).phi;
  } else if (name == "rel-fisher-F") {
    const RelFisher rf = relative_fisher(f, need_h(), p, lambda);
    value = rf.F;
    abs_err = rf.abs_err;
  } else if (name == "rel-moment") {
    const RelCumMoment m = relative_cumulative_moment(f, need_h(), p, alpha);
    value = m.mu;
    abs_err = m.abs_err;
  } else if (name == "rel-sigma") {
    const RelCumMoment m = relative_cumulative_moment(f, need_h(), p, alpha);
    if (!m.sigma) throw DomainError("sigma is undefined at alpha = 0 (exponent 1/(p alpha))");
    value = *m.sigma;
  } else if (name == "cfs") {
    value = fisher_shannon(f);
  } else {
    throw SpecSyntax("unknown functional '" + name + "'");
  }
  if (abs_err < 0.0) abs_err = std::abs(value) * 10.0 * default_quad_options().rel_tol;
  out << "name,value,abs_err\n";
  out << name << ',' << f17(value) << ',' << f17(abs_err) << '\n';
  return 0;
}

int cmd_transform(const std::string& f_spec, const std::string& h_spec, double alpha,
                  int nodes, const std::string& out_path, std::ostream& out) {
  const DensityModel f = parse_density_spec(f_spec);
  const DensityModel h = parse_density_spec(h_spec);
  const TransformOutput t = rel_diff_escort(f, h, alpha, nodes);
  std::ofstream os(out_path);
  if (!os) throw SpecSyntax("cannot open output file: " + out_path);
  os << "x,y,pdf_y\n";
  const auto xs = t.var_map.xs();
  const auto ys = t.var_map.ys();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pdf = t.density.pdf(ys[i]);
    if (!(pdf > 0.0)) continue;
    os << f17(xs[i]) << ',' << f17(ys[i]) << ',' << f17(pdf) << '\n';
  }
  out << "support_length," << f17(t.support_length) << '\n';
  return 0;
}

int cmd_inverse(const std::string& g_spec, const std::string& h_spec, double alpha, int nodes,
                const std::string& out_path) {
  const DensityModel g = parse_density_spec(g_spec);
  const DensityModel h = parse_density_spec(h_spec);
  const DensityModel inv = inverse_rel_diff_escort(g, h, alpha, nodes);
  std::ofstream os(out_path);
  if (!os) throw SpecSyntax("cannot open output file: " + out_path);
  os << "x,pdf_x\n";
  for (double x : sample_points(inv, nodes)) {
    const double v = inv.pdf(x);
    if (!(v > 0.0)) continue;
    os << f17(x) << ',' << f17(v) << '\n';
  }
  return 0;
}

int cmd_minimizer(const std::string& h_spec, double p_star, double lambda, double alpha,
                  int nodes, const std::string& out_path) {
  MinimizerSpec spec;
  spec.p_star = p_star;
  spec.lambda = lambda;
  spec.alpha = alpha;
  spec.reference = parse_density_spec(h_spec);
  const DensityModel fmin = closed_form_minimizer(spec);
  std::ofstream os(out_path);
  if (!os) throw SpecSyntax("cannot open output file: " + out_path);
  os << "x,f_min\n";
  for (double x : sample_points(fmin, nodes)) {
    const double v = fmin.pdf(x);
    if (!(v > 0.0)) continue;
    os << f17(x) << ',' << f17(v) << '\n';
  }
  return 0;
}

int cmd_adapted(const std::string& fstar_spec, double p_star, double lambda, double alpha,
                int nodes, const std::string& out_path) {
  const DensityModel fstar = parse_density_spec(fstar_spec);
  const AdaptedReference ar = adapted_reference(fstar, p_star, lambda, alpha);
  std::ofstream os(out_path);
  if (!os) throw SpecSyntax("cannot open output file: " + out_path);
  os << "x,h_star,c_factor\n";
  for (double x : sample_points(ar.f_star, nodes)) {
    const double v = ar.h_star.pdf(x);
    if (!(v > 0.0)) continue;
    os << f17(x) << ',' << f17(v) << ',' << f17(ar.c_factor(x)) << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& ineq, const std::string& f_spec, const std::string& h_spec,
               const std::string& fstar_spec, double p_star, double lambda, double alpha,
               std::optional<double> beta, double tau, bool allow_experimental,
               std::ostream& out) {
  const DensityModel f = parse_density_spec(f_spec);
  ParamSet ps = ParamSet::from_pstar(p_star, lambda, alpha, beta);
  IneqReport rep;

  if (alpha <= 0.0 && !allow_experimental && ineq != "monotonicity") {
    rep.name = ineq;
    rep.params = ps;
    rep.notes = "not applicable: alpha <= 0 (pass --allow-experimental to evaluate anyway)";
    write_report_csv(out, rep);
    return 2;
  }

  if (ineq == "em" || ineq == "stam" || ineq == "em-shannon" || ineq == "stam-shannon") {
    const DensityModel h = parse_density_spec(h_spec);
    if (alpha <= 0.0) {
      // Experimental evaluation: compute both sides without asserting the bound.
      rep.params = ps;
      rep.name = ineq;
      const double d_xi = renyi_div(f, h, ps.xi);
      if (ineq == "em" || ineq == "em-shannon") {
        const RelCumMoment m = relative_cumulative_moment(f, h, ps.p_star, ps.alpha);
        rep.lhs = std::exp(d_xi + std::log(m.mu) / (ps.p_star * ps.alpha));
      } else {
        const RelFisher rf = relative_fisher(f, h, ps.p, ps.beta * ps.alpha);
        rep.lhs = std::exp((1.0 + ps.beta - ps.lambda) *
                           (std::log(rf.F) / (ps.p * ps.beta * ps.alpha) - d_xi));
      }
      rep.notes = "experimental alpha <= 0: bound not asserted";
      write_report_csv(out, rep);
      return 0;
    }
    if (ineq == "em")
      rep = check_moment_entropy(f, h, ps);
    else if (ineq == "stam")
      rep = check_stam(f, h, ps);
    else if (ineq == "em-shannon")
      rep = check_shannon_variants(f, h, ps).first;
    else
      rep = check_shannon_variants(f, h, ps).second;
  } else if (ineq == "adapted-em" || ineq == "adapted-stam") {
    if (fstar_spec.empty()) throw SpecSyntax("adapted inequalities need --fstar");
    const DensityModel fstar = parse_density_spec(fstar_spec);
    const AdaptedReference ar = adapted_reference(fstar, p_star, lambda, alpha);
    const auto pair = check_adapted(f, ar, alpha);
    rep = (ineq == "adapted-em") ? pair.first : pair.second;
  } else if (ineq == "monotonicity") {
    const DensityModel h = parse_density_spec(h_spec);
    const SmoothingCheck sc = check_monotonicity(f, h, alpha, tau);
    rep.name = "monotonicity";
    rep.params = ps;
    rep.lhs = sc.before;
    rep.rhs = sc.after;
    rep.ratio = sc.before / sc.after;
    rep.applicable = sc.after <= sc.before + 1e-6;
    rep.notes = "smoothing must not increase the relative Fisher-Shannon complexity";
  } else {
    throw SpecSyntax("unknown inequality '" + ineq + "'");
  }
  write_report_csv(out, rep);
  return rep.applicable ? 0 : 2;
}

int cmd_sweep(const std::string& config_path, int jobs, std::ostream& out) {
  const SweepConfig cfg = parse_sweep_config_file(config_path);
  if (cfg.pairs.empty() || cfg.inequalities.empty() || cfg.lambdas.empty() ||
      cfg.alphas.empty()) {
    // An empty grid is a valid (empty) sweep.
  }
  SweepSummary summary;
  const std::vector<SweepRow> rows = run_sweep(cfg, &summary, jobs);

  if (!cfg.csv_path.empty()) {
    std::ofstream os(cfg.csv_path);
    if (!os) throw ConfigError("cannot open csv output: " + cfg.csv_path);
    os << "ineq,f,h,pstar,lambda,alpha,beta,lhs,rhs,ratio,applicable,notes\n";
    for (const auto& row : rows) {
      std::string notes = row.report.notes;
      for (char& c : notes)
        if (c == ',') c = ';';
      os << row.ineq << ',' << row.f_spec << ',' << row.h_spec << ','
         << f17(row.report.params.p_star) << ',' << f17(row.report.params.lambda) << ','
         << f17(row.report.params.alpha) << ',' << f17(row.report.params.beta) << ','
         << f17(row.report.lhs) << ',' << f17(row.report.rhs) << ',' << f17(row.report.ratio)
         << ',' << (row.report.applicable ? "true" : "false") << ',' << notes << '\n';
    }
  }
  nlohmann::json summary_json = {{"cells", summary.cells},
                                 {"applicable", summary.applicable},
                                 {"sharp", summary.sharp},
                                 {"violations", summary.violations}};
  if (!cfg.json_path.empty()) {
    std::ofstream js(cfg.json_path);
    if (!js) throw ConfigError("cannot open json output: " + cfg.json_path);
    js << summary_json.dump() << '\n';
  }
  out << summary_json.dump() << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"relesc - relative differential-escort transforms, divergences and sharp "
               "informational inequalities"};
  app.require_subcommand(1);

  std::string gtf_fn, f_spec, h_spec, g_spec, fstar_spec, params_text, out_path, config_path,
      ineq, functional_name;
  double p = 2.0, q = 2.0, z = 0.0, alpha = 1.0, lambda = 1.0, p_star = 2.0, tau = 0.1;
  std::optional<double> beta;
  int nodes = 513;
  int jobs = 1;
  bool allow_experimental = false;

  auto* gtf = app.add_subcommand("gtf", "Evaluate a generalized trigonometric function");
  gtf->footer("Example: relesc gtf sin --p 2 --q 2 --z 0.5235987755982988");
  gtf->add_option("function", gtf_fn, "sin|cos|sinh|cosh|arcsin|arcsinh")->required();
  gtf->add_option("--p", p, "first index")->required();
  gtf->add_option("--q", q, "second index")->required();
  gtf->add_option("--z", z, "argument")->required();

  auto* fun = app.add_subcommand("functional", "Evaluate an informational functional");
  fun->footer("Example: relesc functional kl --f exp:a=2 --h exp:a=1");
  fun->add_option("name", functional_name,
                  "deviation|renyi|shannon|tsallis|fisher|kxi|renyi-div|kl|rel-fisher|"
                  "rel-fisher-F|rel-moment|rel-sigma|cfs")
      ->required();
  fun->add_option("--f", f_spec, "density spec")->required();
  fun->add_option("--h", h_spec, "reference density spec");
  fun->add_option("--params", params_text, "p=..,lambda=..,alpha=.. (defaults 2,1,1)");

  auto* tr = app.add_subcommand("transform", "Relative differential-escort transform");
  tr->footer("Example: relesc transform --f exp:a=2 --h exp:a=1 --alpha 1.5 --out t.csv");
  tr->add_option("--f", f_spec)->required();
  tr->add_option("--h", h_spec)->required();
  tr->add_option("--alpha", alpha)->required();
  tr->add_option("--nodes", nodes, "grid nodes (default 513)");
  tr->add_option("--out", out_path, "CSV path (x,y,pdf_y)")->required();

  auto* inv = app.add_subcommand("inverse", "Inverse relative differential-escort transform");
  inv->footer("Example: relesc inverse --g uniform:0,1 --h exp:a=1 --alpha 2 --out i.csv");
  inv->add_option("--g", g_spec)->required();
  inv->add_option("--h", h_spec)->required();
  inv->add_option("--alpha", alpha)->required();
  inv->add_option("--nodes", nodes, "grid nodes (default 513)");
  inv->add_option("--out", out_path, "CSV path (x,pdf_x)")->required();

  auto* mini = app.add_subcommand("minimizer", "Closed-form minimizing density");
  mini->footer("Example: relesc minimizer --h gauss --pstar 2 --lambda 2 --alpha 2 --out m.csv");
  mini->add_option("--h", h_spec)->required();
  mini->add_option("--pstar", p_star)->required();
  mini->add_option("--lambda", lambda)->required();
  mini->add_option("--alpha", alpha)->required();
  mini->add_option("--nodes", nodes, "sample count (default 513)");
  mini->add_option("--out", out_path, "CSV path (x,f_min)")->required();

  auto* ad = app.add_subcommand("adapted", "Adapted reference for a prescribed minimizer");
  ad->footer("Example: relesc adapted --fstar gauss --pstar 2 --lambda 1 --alpha 2 --out a.csv");
  ad->add_option("--fstar", fstar_spec)->required();
  ad->add_option("--pstar", p_star)->required();
  ad->add_option("--lambda", lambda)->required();
  ad->add_option("--alpha", alpha)->required();
  ad->add_option("--nodes", nodes, "sample count (default 513)");
  ad->add_option("--out", out_path, "CSV path (x,h_star,c_factor)")->required();

  auto* ver = app.add_subcommand("verify", "Evaluate one inequality instance");
  ver->footer(
      "Example: relesc verify --ineq em --f exp:a=2 --h exp:a=1 --pstar 2 --lambda 2 --alpha 1");
  ver->add_option("--ineq", ineq,
                  "em|stam|em-shannon|stam-shannon|adapted-em|adapted-stam|monotonicity")
      ->required();
  ver->add_option("--f", f_spec)->required();
  ver->add_option("--h", h_spec, "reference density (adapted-* use --fstar instead)");
  ver->add_option("--fstar", fstar_spec, "prescribed minimizer for adapted-*");
  ver->add_option("--pstar", p_star)->required();
  ver->add_option("--lambda", lambda)->required();
  ver->add_option("--alpha", alpha)->required();
  ver->add_option("--beta", beta, "defaults to lambda");
  ver->add_option("--tau", tau, "smoothing variance for monotonicity (default 0.1)");
  ver->add_flag("--allow-experimental", allow_experimental,
                "evaluate alpha <= 0 without asserting the bound");

  auto* sw = app.add_subcommand("sweep", "Run a parameter sweep from a config file");
  sw->footer("Example: relesc sweep --config sweep.cfg --jobs 2");
  sw->add_option("--config", config_path)->required();
  sw->add_option("--jobs", jobs, "worker threads (default 1)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("relesc");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 1;
  }

  try {
    if (gtf->parsed()) return cmd_gtf(gtf_fn, p, q, z, out);
    if (fun->parsed())
      return cmd_functional(functional_name, f_spec, h_spec, parse_params_arg(params_text),
                            out);
    if (tr->parsed()) return cmd_transform(f_spec, h_spec, alpha, nodes, out_path, out);
    if (inv->parsed()) return cmd_inverse(g_spec, h_spec, alpha, nodes, out_path);
    if (mini->parsed()) return cmd_minimizer(h_spec, p_star, lambda, alpha, nodes, out_path);
    if (ad->parsed()) return cmd_adapted(fstar_spec, p_star, lambda, alpha, nodes, out_path);
    if (ver->parsed())
      return cmd_verify(ineq, f_spec, h_spec, fstar_spec, p_star, lambda, alpha, beta, tau,
                        allow_experimental, out);
    if (sw->parsed()) return cmd_sweep(config_path, jobs, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return error_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "no subcommand given\n";
  return 1;
}

}  // namespace relesc
