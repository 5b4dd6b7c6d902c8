#include "ksol/cli.hpp"

#include "ksol/acceptance.hpp"
#include "ksol/errors.hpp"
#include "ksol/futaki.hpp"
#include "ksol/geometry.hpp"
#include "ksol/residuals.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace ksol {

using nlohmann::json;

namespace {

// NaN and infinities have no JSON spelling; they become null.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json exact(const Rational& r) { return {{"exact", to_string(r)}, {"value", to_double(r)}}; }

json root_json(const RootResult& r, const char* method) {
  json j{{"method", method},
         {"kappa1", r.kappa1},
         {"bracket", {num(r.bracket.first), num(r.bracket.second)}},
         {"residual", num(r.residual)},
         {"iterations", r.iterations}};
  j["uniqueness_certificate"] = r.uniqueness_certificate ? json(*r.uniqueness_certificate) : json(nullptr);
  json br = json::array();
  for (const auto& [a, b] : r.scan_brackets) br.push_back({a, b});
  j["scan_brackets"] = br;
  return j;
}

json derived_json(const SolitonConfig& cfg) {
  json sig = json::array();
  for (const auto& s : cfg.sigmas) sig.push_back(exact(s));
  return {{"class", to_string(classify(cfg))},
          {"family", to_string(family(cfg))},
          {"epsilon", to_double(cfg.epsilon)},
          {"E_star", exact(cfg.E_star)},
          {"sigmas", sig},
          {"s_star", cfg.compact() ? exact(cfg.s_star) : json(nullptr)},
          {"c", num(cfg.c)},
          {"kappa1", num(cfg.kappa1)},
          {"kappa0", num(cfg.kappa0)}};
}

json validation_json(const ValidationReport& rep) {
  json v = json::array();
  for (const auto& x : rep.violations)
    v.push_back({{"name", x.name},
                 {"detail", x.detail},
                 {"kind", x.kind == ViolationKind::Structural ? "structural" : "completeness"}});
  return {{"admissible", rep.admissible()}, {"structurally_admissible", rep.structurally_admissible()}, {"violations", v}};
}

json special_orbit_json(const SpecialOrbitReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  json c2 = json::array();
  for (const auto& c : rep.c_squared) c2.push_back(exact(c));
  return {{"k", rep.dims.k},
          {"k_tilde", rep.dims.k_tilde ? json(*rep.dims.k_tilde) : json(nullptr)},
          {"E_star", rep.e_star ? exact(*rep.e_star) : json(nullptr)},
          {"s_star", rep.s_star ? exact(*rep.s_star) : json(nullptr)},
          {"c_squared", c2},
          {"closedness_asserted", rep.closedness_asserted ? json(*rep.closedness_asserted) : json(nullptr)},
          {"checks", checks},
          {"all_pass", rep.all_pass()}};
}

json residual_json(const ResidualGrid& g, double tol) {
  const ResidualSummary s = summarize(g);
  return {{"grid_points", g.s_values.size()},
          {"s_min", g.s_values.front()},
          {"s_max", g.s_values.back()},
          {"max_t", s.max_t},
          {"max_fibre", s.max_fibre},
          {"max_base", s.max_base},
          {"max_equation", s.max_equation()},
          {"first_integral", {{"min", s.c_min}, {"max", s.c_max}, {"spread", s.c_spread()}}},
          {"max_mu", s.max_mu},
          {"bianchi", {{"min", s.bianchi_min}, {"max", s.bianchi_max}}},
          {"tolerance", tol},
          {"pass", s.max_equation() < tol && s.c_spread() < tol}};
}

json completeness_json(const CompletenessReport& c) {
  json slopes = json::object();
  for (const auto& [k, v] : c.slope_estimates) slopes[k] = num(v);
  return {{"class", to_string(c.cls)},
          {"reason", c.reason},
          {"geodesic_length", num(c.geodesic_length)},
          {"length_infinite", c.length_infinite},
          {"slopes", slopes}};
}

std::string csv_row(const std::vector<double>& xs) {
  std::string line;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) line += ',';
    line += format_double(xs[i]);
  }
  return line + "\n";
}

std::string samples_csv(const Profile& p, const std::vector<double>& grid, double rel_tol) {
  const std::size_t r = p.config().r();
  std::string out = "s,t";
  out += ",alpha";
  for (std::size_t i = 1; i <= r; ++i) out += ",beta_" + std::to_string(i);
  out += ",f";
  for (std::size_t i = 1; i <= r; ++i) out += ",g_" + std::to_string(i);
  out += ",u\n";
  double t = 0.0, s_prev = 0.0;
  bool t_ok = true;
  for (double s : grid) {
    if (t_ok) {
      try {
        t += t_segment(p, s_prev, s, rel_tol);
        s_prev = s;
      } catch (const AdmissibilityError&) {
        t_ok = false;  // alpha <= 0 on the way: t is undefined from here on
      }
    }
    const ProfileSample x = p.sample(s);
    std::vector<double> row{s, t_ok ? t : std::nan(""), x.alpha};
    row.insert(row.end(), x.beta.begin(), x.beta.end());
    row.push_back(std::sqrt(x.alpha));
    for (double b : x.beta) row.push_back(std::sqrt(b));
    row.push_back(x.phi);
    out += csv_row(row);
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SchemaError("cannot write " + path);
  f << text;
}

void finalize_kappa(RunConfig& rc, const SolveOptions& opt) {
  if (rc.solve_kappa1) (void)solve_kappa1(rc, opt);
}

}  // namespace

json solve_kappa1(RunConfig& rc, const SolveOptions& opt) {
  const SolitonClass fam = family(rc.cfg);
  json out;
  if (fam == SolitonClass::ShrinkingCompact) {
    const auto r = find_kappa1_compact(rc.cfg, opt.root_halfwidth, opt.root_step);
    out = root_json(r, "futaki_root");
    rc.cfg = with_kappa1(rc.cfg, r.kappa1);
  } else if (fam == SolitonClass::ShrinkingNoncompact) {
    const auto r = find_kappa1_noncompact(rc.cfg);
    out = root_json(r, "chi_root");
    rc.cfg = with_kappa1(rc.cfg, r.kappa1);
  } else {
    throw AdmissibilityError("kappa1 = \"solve\" needs a shrinking configuration (class " + to_string(fam) + ")");
  }
  rc.solve_kappa1 = false;
  return out;
}

SolveOutcome cmd_solve(RunConfig rc, const SolveOptions& opt) {
  SolveOutcome o;
  json& rep = o.report;
  rep["config"] = rc.echo;
  rep["epsilon_input"] = rc.epsilon_input;
  rep["kappa1_solve"] = rc.solve_kappa1 ? solve_kappa1(rc, opt) : json(nullptr);
  const SolitonConfig& cfg = rc.cfg;
  rep["derived"] = derived_json(cfg);
  rep["special_orbit"] = rc.flag_bundle ? special_orbit_json(special_orbit_conditions(*rc.flag_bundle, cfg.epsilon))
                                        : json(nullptr);
  const ValidationReport val = validate(cfg);
  rep["validation"] = validation_json(val);
  rep["futaki"] = nullptr;
  rep["residuals"] = nullptr;
  rep["completeness"] = nullptr;
  rep["profile"] = nullptr;
  if (!val.admissible()) o.exit_code = kInadmissible;
  if (!val.structurally_admissible()) return o;

  if (val.family == SolitonClass::ShrinkingCompact) {
    const auto at0 = futaki_integral(cfg, 0.0);
    const auto atk = futaki_integral(cfg, cfg.kappa1);
    rep["futaki"] = {{"exact_at_0", to_string(*at0.exact_value)},
                     {"at_0", at0.value},
                     {"at_kappa1", atk.value},
                     {"y_form_at_kappa1", atk.y_form_value}};
  }
  const Profile p = Profile::build(cfg);
  rep["profile"] = {{"exp_mode_raw", num(p.exp_mode_raw())}, {"exp_mode_dropped", p.exp_mode_dropped()}};
  const int n = opt.grid.value_or(rc.grid);
  const double s_max = opt.s_max.value_or(rc.s_max);
  const auto grid = default_grid(p, n, s_max);
  const auto g = soliton_residuals(p, grid);
  rep["residuals"] = residual_json(g, opt.residual_tol);
  rep["completeness"] = completeness_json(completeness_report(p));
  o.csv = samples_csv(p, grid, opt.t_rel_tol);
  for (double x : {summarize(g).max_equation(), summarize(g).c_spread()})
    if (!std::isfinite(x) && o.exit_code == kOk) o.exit_code = kNumeric;
  return o;
}

std::string cmd_futaki(const RunConfig& rc, double kappa_min, double kappa_max, int steps, std::string* sign_changes) {
  if (steps < 2) throw std::invalid_argument("futaki: need at least 2 steps");
  if (!(kappa_max > kappa_min)) throw std::invalid_argument("futaki: need kappa-max > kappa-min");
  if (family(rc.cfg) != SolitonClass::ShrinkingCompact)
    throw AdmissibilityError("futaki: needs a compact shrinking configuration (class " + to_string(family(rc.cfg)) + ")");
  std::string out = "kappa1,I\n";
  double prev_k = 0.0, prev_v = 0.0;
  for (int k = 0; k < steps; ++k) {
    // Endpoint-exact grid: k = (steps-1)/2 lands on 0 for symmetric ranges.
    const double kappa = k == steps - 1 ? kappa_max : kappa_min + (kappa_max - kappa_min) * k / (steps - 1);
    const double v = futaki_integral(rc.cfg, kappa).value;
    out += csv_row({kappa, v});
    if (sign_changes && k > 0 && ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)))
      *sign_changes += format_double(prev_k) + "," + format_double(kappa) + "\n";
    prev_k = kappa;
    prev_v = v;
  }
  return out;
}

std::string cmd_reconstruct(RunConfig rc, const SolveOptions& opt, double t_max, int points) {
  if (points < 2) throw std::invalid_argument("reconstruct: need at least 2 points");
  if (!(t_max > 0.0)) throw std::invalid_argument("reconstruct: need t-max > 0");
  finalize_kappa(rc, opt);
  const Profile p = Profile::build(rc.cfg);
  std::vector<double> grid;
  for (int k = 0; k < points; ++k) grid.push_back(t_max * k / (points - 1));
  const MetricFunctions m = metric_functions(p, grid);
  const std::size_t r = rc.cfg.r();
  std::string out = "t,s,f";
  for (std::size_t i = 1; i <= r; ++i) out += ",g_" + std::to_string(i);
  out += ",u\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::vector<double> row{m.t_grid[k], m.s_of_t[k], m.f[k]};
    for (std::size_t i = 0; i < r; ++i) row.push_back(m.g[i][k]);
    row.push_back(m.u[k]);
    out += csv_row(row);
  }
  return out;
}

std::string cmd_flow(RunConfig rc, const SolveOptions& opt, double tau, std::optional<double> t_max, int points) {
  if (points < 1) throw std::invalid_argument("flow: need at least 1 point");
  finalize_kappa(rc, opt);
  const Profile p = Profile::build(rc.cfg);
  const double hi = t_max ? *t_max : (p.compact() ? 0.9 * t_of_s(p, p.s_hi()) : 5.0);
  if (!(hi > 0.0)) throw std::invalid_argument("flow: need t-max > 0");
  std::optional<FlowMap> fm;
  if (rc.cfg.kappa1 != 0.0) fm = FlowMap::build(p);
  std::string out = "t,xi\n";
  for (int k = 1; k <= points; ++k) {
    const double t = hi * k / points;
    double xi = std::nan("");
    try {
      xi = fm ? fm->xi(tau, t) : flow_trajectory(p, tau, t);
    } catch (const std::out_of_range&) {
      // Beyond the tabulated range or the flow's time domain: reported as nan.
    }
    out += csv_row({t, xi});
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohomogeneity-one gradient Kaehler-Ricci soliton toolkit"};
  app.require_subcommand(1);
  SolveOptions opt;
  std::string config_path;

  auto add_tolerances = [&](CLI::App* sub) {
    sub->add_option("--residual-tol", opt.residual_tol, "pass threshold for residual maxima")->capture_default_str();
    sub->add_option("--t-rel-tol", opt.t_rel_tol, "relative tolerance of the geodesic quadrature")
        ->capture_default_str();
    sub->add_option("--root-halfwidth", opt.root_halfwidth, "compact root scan half-width")->capture_default_str();
    sub->add_option("--root-step", opt.root_step, "compact root scan step")->capture_default_str();
  };

  auto* solve = app.add_subcommand("solve", "derive, validate, build and verify a profile");
  solve->add_option("config", config_path, "JSON config")->required();
  std::string out_path, csv_path;
  solve->add_option("--out", out_path, "report JSON path (default: stdout)");
  solve->add_option("--csv", csv_path, "sample table path");
  solve->add_option("--s-max", opt.s_max, "sampling range for noncompact profiles");
  solve->add_option("--grid", opt.grid, "number of sample points");
  add_tolerances(solve);

  auto* futaki = app.add_subcommand("futaki", "sweep the Futaki-type integral");
  futaki->add_option("config", config_path, "JSON config")->required();
  double kmin = -1.0, kmax = 1.0;
  int steps = 81;
  futaki->add_option("--kappa-min", kmin)->capture_default_str();
  futaki->add_option("--kappa-max", kmax)->capture_default_str();
  futaki->add_option("--steps", steps)->capture_default_str();

  auto* findk = app.add_subcommand("find-kappa", "solve for kappa1 (compact or noncompact shrinker)");
  findk->add_option("config", config_path, "JSON config")->required();
  add_tolerances(findk);

  auto* recon = app.add_subcommand("reconstruct", "metric functions f, g_i, u on a uniform t grid");
  recon->add_option("config", config_path, "JSON config")->required();
  double t_max_recon = 0.0;
  int points = 101;
  recon->add_option("--t-max", t_max_recon)->required();
  recon->add_option("--points", points)->capture_default_str();
  add_tolerances(recon);

  auto* flow = app.add_subcommand("flow", "Ricci flow trajectories Xi(tau, t)");
  flow->add_option("config", config_path, "JSON config")->required();
  double tau = 0.0;
  std::optional<double> t_max_flow;
  int flow_points = 50;
  flow->add_option("--tau", tau)->required();
  flow->add_option("--t-max", t_max_flow);
  flow->add_option("--points", flow_points)->capture_default_str();
  add_tolerances(flow);

  auto* paper = app.add_subcommand("paper-examples", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e, out, err);
    return kSchema;
  }

  try {
    if (paper->parsed()) {
      const auto results = run_acceptance();
      print_acceptance(out, results);
      return all_counted_pass(results) ? kOk : kFailures;
    }
    RunConfig rc = load_config(config_path);
    if (solve->parsed()) {
      SolveOutcome o = cmd_solve(std::move(rc), opt);
      const std::string text = o.report.dump(2) + "\n";
      if (out_path.empty())
        out << text;
      else
        write_file(out_path, text);
      if (!csv_path.empty() && !o.csv.empty()) write_file(csv_path, o.csv);
      for (const auto& v : o.report["validation"]["violations"])
        err << "violation: " << v["name"].get<std::string>() << " (" << v["detail"].get<std::string>() << ")\n";
      return o.exit_code;
    }
    if (futaki->parsed()) {
      std::string changes;
      out << cmd_futaki(rc, kmin, kmax, steps, &changes);
      std::istringstream lines(changes);
      for (std::string l; std::getline(lines, l);) err << "sign change in [" << l << "]\n";
      return kOk;
    }
    if (findk->parsed()) {
      rc.solve_kappa1 = true;
      out << solve_kappa1(rc, opt).dump(2) << "\n";
      return kOk;
    }
    if (recon->parsed()) {
      out << cmd_reconstruct(std::move(rc), opt, t_max_recon, points);
      return kOk;
    }
    if (flow->parsed()) {
      out << cmd_flow(std::move(rc), opt, tau, t_max_flow, flow_points);
      return kOk;
    }
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kSchema;
  } catch (const AdmissibilityError& e) {
    err << "inadmissible: " << e.what() << "\n";
    return kInadmissible;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    err << "bad argument: " << e.what() << "\n";
    return kSchema;
  } catch (const std::out_of_range& e) {
    err << "out of range: " << e.what() << "\n";
    return kSchema;
  }
  return kSchema;
}

}  // namespace ksol
