#include "ksol/acceptance.hpp"

#include "ksol/catalog.hpp"
#include "ksol/config_io.hpp"
#include "ksol/futaki.hpp"
#include "ksol/geometry.hpp"
#include "ksol/residuals.hpp"

#include <chrono>
#include <cmath>
#include <functional>

namespace ksol {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string yes(bool b) { return b ? "ok" : "VIOLATED"; }

CriterionResult start(std::string id, std::string title, bool pass) {
  CriterionResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.pass = pass;
  return r;
}

SolitonConfig solved_compact(const SolitonConfig& cfg) { return with_kappa1(cfg, find_kappa1_compact(cfg).kappa1); }
SolitonConfig solved_noncompact(const SolitonConfig& cfg) {
  return with_kappa1(cfg, find_kappa1_noncompact(cfg).kappa1);
}

struct Named {
  std::string name;
  SolitonConfig cfg;
};

// One representative per class for the residual and flow criteria.
std::vector<Named> class_representatives() {
  return {{"steady", catalog::steady_family(1, -1.0, Rational(1))},
          {"expanding", catalog::expanding_sample(-1.0)},
          {"compact shrinker", solved_compact(catalog::compact_mixed_quadric())},
          {"noncompact shrinker", solved_noncompact(catalog::noncompact_line_bundle(0.0))}};
}

CriterionResult c1() {
  CriterionResult r = start("1", "exact Futaki-type values at kappa1 = 0", true);
  const auto t0 = Clock::now();
  const std::vector<std::pair<std::string, std::pair<SolitonConfig, Rational>>> cases{
      {"mixed quadric", {catalog::compact_mixed_quadric(), Rational(39) / 5}},
      {"equal weights", {catalog::compact_equal_weights(), Rational(1368) / 7}},
      {"blowdown pair", {catalog::compact_blowdown_pair(), Rational(-7680) / 7}}};
  for (const auto& [name, cw] : cases) {
    const auto e = futaki_integral(cw.first, 0.0);
    const bool exact = e.exact_value && *e.exact_value == cw.second;
    const double want = to_double(cw.second);
    // Float route: the y-form closed-form moments, independent of the exact polynomial integral.
    const double rel = std::abs(e.y_form_value - want) / std::abs(want);
    r.pass = r.pass && exact && rel < 1e-12;
    r.notes.push_back(name + ": exact " + (e.exact_value ? to_string(*e.exact_value) : "missing") + " (want " +
                      to_string(cw.second) + "), float rel err " + sci(rel));
  }
  const bool fast = seconds_since(t0) < 1.0;
  r.pass = r.pass && fast;
  r.notes.push_back("runtime budget 1 s: " + yes(fast));
  return r;
}

CriterionResult c2() {
  CriterionResult r = start("2", "mixed quadric at kappa1 = 1/2", false);
  const double v = futaki_integral(catalog::compact_mixed_quadric(), 0.5).value;
  r.pass = std::abs(v - -0.7289) < 5e-4;
  r.notes.push_back("I(1/2) = " + format_double(v) + ", target -0.7289 within 5e-4");
  return r;
}

CriterionResult c3() {
  CriterionResult r = start("3", "compact Futaki roots", false);
  const auto a = find_kappa1_compact(catalog::compact_mixed_quadric());
  const double ia = std::abs(futaki_integral(catalog::compact_mixed_quadric(), a.kappa1).value);
  const double kb = find_kappa1_compact(catalog::compact_equal_weights()).kappa1;
  const double kc = find_kappa1_compact(catalog::compact_blowdown_pair()).kappa1;
  r.pass = a.kappa1 > 0.0 && a.kappa1 < 0.5 && ia < 1e-10 && kb > 0.0 && kc > 0.0;
  r.notes.push_back("mixed quadric: kappa1 = " + format_double(a.kappa1) + ", |I| = " + sci(ia));
  r.notes.push_back("equal weights: kappa1 = " + format_double(kb));
  r.notes.push_back("blowdown pair: kappa1 = " + format_double(kc));
  return r;
}

CriterionResult c4() {
  CriterionResult r = start("4", "noncompact shrinker root on the line bundle instance", false);
  const auto x = find_kappa1_noncompact(catalog::noncompact_line_bundle(0.0));
  const double err = std::abs(x.kappa1 - 1.0 / std::sqrt(2.0));
  r.pass = err < 1e-12 && x.uniqueness_certificate == 1;
  r.notes.push_back("kappa1 = " + format_double(x.kappa1) + ", |kappa1 - 1/sqrt 2| = " + sci(err) +
                    ", sign changes = " + std::to_string(x.uniqueness_certificate.value_or(-1)));
  return r;
}

CriterionResult c5() {
  CriterionResult r = start("5", "residual suite, one profile per class, 200-point grid", true);
  const auto t0 = Clock::now();
  for (const auto& [name, cfg] : class_representatives()) {
    const auto p = Profile::build(cfg);
    const auto s = summarize(soliton_residuals(p, default_grid(p, 200)));
    const bool ok = s.max_equation() < 1e-9 && s.c_spread() < 1e-9;
    r.pass = r.pass && ok;
    r.notes.push_back(name + ": max residual " + sci(s.max_equation()) + ", first integral spread " +
                      sci(s.c_spread()));
  }
  const bool fast = seconds_since(t0) < 10.0;
  r.pass = r.pass && fast;
  r.notes.push_back("runtime budget 10 s: " + yes(fast));
  return r;
}

CriterionResult c6() {
  CriterionResult r = start("6", "flat and cigar closed forms", false);
  const auto flat = Profile::build(catalog::flat_steady(0.0));
  const auto cigar = Profile::build(catalog::flat_steady(-1.0));
  double ef = 0.0, ec = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const double s = 0.4 * k;
    ef = std::max(ef, std::abs(flat.alpha(s) - 2.0 * s) / std::max(1.0, 2.0 * s));
    ec = std::max(ec, std::abs(cigar.alpha(s) + 2.0 * std::expm1(-s)));
  }
  r.pass = ef < 1e-12 && ec < 1e-12;
  r.notes.push_back("alpha = 2s: max err " + sci(ef) + "; alpha = 2(1 - e^{-s}): max err " + sci(ec));
  return r;
}

CriterionResult c7() {
  CriterionResult r = start("7", "boundary normalization alpha(0) = 0, alpha'(0) = 2", true);
  std::vector<Named> all = class_representatives();
  all.push_back({"cigar", catalog::flat_steady(-1.0)});
  all.push_back({"flat", catalog::flat_steady(0.0)});
  all.push_back({"equal weights", solved_compact(catalog::compact_equal_weights())});
  all.push_back({"blowdown pair", solved_compact(catalog::compact_blowdown_pair())});
  all.push_back({"noncompact blowdown", solved_noncompact(catalog::noncompact_blowdown(0.0))});
  double worst0 = 0.0, worst1 = 0.0, worst_end = 0.0;
  for (const auto& [name, cfg] : all) {
    const auto p = Profile::build(cfg);
    const auto x = p.sample(0.0);
    worst0 = std::max(worst0, std::abs(x.alpha));
    worst1 = std::max(worst1, std::abs(x.dalpha - 2.0));
    if (p.compact()) worst_end = std::max(worst_end, std::abs(p.alpha(p.s_hi())));
  }
  r.pass = worst0 < 1e-10 && worst1 < 1e-10 && worst_end < 1e-9;
  r.notes.push_back(std::to_string(all.size()) + " profiles: max |alpha(0)| " + sci(worst0) + ", max |alpha'(0) - 2| " +
                    sci(worst1) + ", max |alpha(s*)| " + sci(worst_end));
  return r;
}

CriterionResult c8() {
  CriterionResult r = start("8", "reflection symmetry of the Futaki-type integral", true);
  for (double k : {0.0, 0.3, -0.7}) {
    const auto [lhs, rhs] = symmetry_identity_check(catalog::compact_mixed_quadric(), k);
    const double rel = std::abs(lhs - rhs) / std::abs(rhs);
    r.pass = r.pass && rel < 1e-10;
    r.notes.push_back("kappa1 = " + format_double(k) + ": rel err " + sci(rel));
  }
  return r;
}

CriterionResult c9() {
  CriterionResult r = start("9", "asymptotic growth of alpha", false);
  const auto st = Profile::build(catalog::steady_family(1, -1.0, Rational(1)));
  const double ratio = st.alpha(1e4) / st.alpha(1e3);
  const auto ex = Profile::build(catalog::expanding_sample(-1.0));
  const double exs = ex.alpha(1e4) / 1e4;
  const auto sh = Profile::build(solved_noncompact(catalog::noncompact_line_bundle(0.0)));
  const double shs = sh.alpha(1e4) / 1e4 * sh.config().kappa1;
  r.pass = std::abs(ratio - 1.0) < 0.02 && std::abs(exs - 1.0) < 0.02 && std::abs(shs - 1.0) < 0.02;
  r.notes.push_back("steady: alpha(1e4)/alpha(1e3) = " + format_double(ratio));
  r.notes.push_back("expanding: alpha(1e4)/1e4 = " + format_double(exs) + " (want -1/kappa1 = 1)");
  r.notes.push_back("noncompact shrinker: kappa1 alpha(1e4)/1e4 = " + format_double(shs));
  return r;
}

CriterionResult c10() {
  CriterionResult r = start("10", "steady family tends to the Ricci-flat profile as kappa1 -> 0", true);
  const auto zero = Profile::build(catalog::steady_family(1, 0.0, Rational(1)));
  double prev = std::numeric_limits<double>::infinity();
  std::string seq;
  for (double k : {-1.0, -0.5, -0.25, -0.125}) {
    const auto p = Profile::build(catalog::steady_family(1, k, Rational(1)));
    double sup = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double s = 0.1 * i;
      sup = std::max(sup, std::abs(p.alpha(s) - zero.alpha(s)));
    }
    r.pass = r.pass && sup < prev;
    prev = sup;
    seq += (seq.empty() ? "" : ", ") + format_double(sup);
  }
  r.notes.push_back("sup |alpha_k - alpha_0| on s in [0.1, 10] for k = -1, -1/2, -1/4, -1/8: " + seq);
  return r;
}

double max_abs_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

CriterionResult c11() {
  CriterionResult r = start("11", "detuned E*: Bianchi quantity constant and bounded away from 0", false);
  // Steady kappa1 = -1 keeps alpha bounded, so Q is measured at its natural scale.
  const auto p = Profile::build_detuned(catalog::steady_family(1, -1.0, Rational(1)), Rational(1) / 10);
  const auto g = soliton_residuals(p, default_grid(p, 200));
  double qmin = std::numeric_limits<double>::infinity(), qmax = -qmin, qabs = 0.0;
  for (double q : g.bianchi) {
    qmin = std::min(qmin, q);
    qmax = std::max(qmax, q);
    qabs = std::max(qabs, std::abs(q));
  }
  double min_abs = std::numeric_limits<double>::infinity();
  for (double q : g.bianchi) min_abs = std::min(min_abs, std::abs(q));
  const bool constant = qmax - qmin < 1e-8;
  const bool away = min_abs >= 1e-3;
  r.pass = constant && away;
  r.known_unattainable = !r.pass && constant && !away;
  r.notes.push_back("steady instance, E* + 1/10: Q spread " + sci(qmax - qmin) + " (constant: " + yes(constant) +
                    "), min |Q| " + sci(min_abs) + " (>= 1e-3: " + yes(away) + ")");
  r.notes.push_back("max residuals: t " + sci(max_abs_of(g.r_t)) + ", fibre " + sci(max_abs_of(g.r_fibre)) +
                    ", base " + sci(max_abs_of(g.r_base[1])));
  if (r.known_unattainable) {
    r.notes.push_back("analysis: with beta_i and phi linear in s, the t-equation is the s-derivative of the");
    r.notes.push_back("  first-order alpha equation for every constant E*, so Q (a multiple of the t-equation");
    r.notes.push_back("  residual) vanishes identically on any profile of this form, detuned or not. Detuning");
    r.notes.push_back("  E* breaks only the base equations. A nonzero conserved Q needs a metric outside the");
    r.notes.push_back("  linear ansatz; see the supplementary line 11s.");
  }
  return r;
}

CriterionResult c11s() {
  CriterionResult r = start("11s", "supplementary: free system off the ansatz, e^{-2u} Q conserved, |Q| >= 1e-3", false);
  r.counted = false;
  FreeState st;
  st.f = 0.9;
  st.df = 0.4;
  st.g = {1.0, 1.3};
  st.dg = {0.0, 0.35};
  st.u = 0.2;
  st.du = -0.5;
  st.d2u = 0.3;
  const auto tr = integrate_free_system({{0, 1, -1}, {1, 2, -1}}, -1.0, st, 0.0, 1.5, 31);
  const double q0 = tr.scaled.front();
  double drift = 0.0, min_abs = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < tr.q.size(); ++k) {
    drift = std::max(drift, std::abs(tr.scaled[k] - q0) / std::abs(q0));
    min_abs = std::min(min_abs, std::abs(tr.q[k]));
  }
  r.pass = drift < 1e-8 && min_abs >= 1e-3;
  r.notes.push_back("t in [0, 1.5]: relative drift of e^{-2u} Q " + sci(drift) + ", min |Q| " + sci(min_abs));
  return r;
}

CriterionResult c12() {
  CriterionResult r = start("12", "flow ODE dXi/dtau = u'(Xi)/(1 + eps tau) on 10x10 grids", true);
  for (const auto& [name, cfg] : class_representatives()) {
    const auto p = Profile::build(cfg);
    const auto fm = FlowMap::build(p);
    const double eps = cfg.eps(), k = cfg.kappa1;
    const double t_hi = p.compact() ? 0.8 * t_of_s(p, p.s_hi()) : 3.0;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double t = t_hi * (0.1 + 0.1 * i);
      for (int j = 0; j < 10; ++j) {
        const double tau = -0.45 + 0.1 * j;
        // Richardson-extrapolated central difference, O(h^4).
        const auto diff = [&](double h) { return (fm.xi(tau + h, t) - fm.xi(tau - h, t)) / (2.0 * h); };
        const double d = (4.0 * diff(5e-4) - diff(1e-3)) / 3.0;
        const double x = fm.xi(tau, t);
        const double rhs = k * std::sqrt(p.alpha(s_of_t(p, x))) / (1.0 + eps * tau);
        worst = std::max(worst, std::abs(d - rhs));
      }
    }
    r.pass = r.pass && worst < 1e-6;
    r.notes.push_back(name + ": max |dXi/dtau - rhs| " + sci(worst));
  }
  return r;
}

CriterionResult guarded(const std::string& id, const std::function<CriterionResult()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    CriterionResult r = start(id, "criterion " + id, false);
    r.notes.push_back(std::string("threw: ") + e.what());
    return r;
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  const std::vector<std::pair<std::string, std::function<CriterionResult()>>> all{
      {"1", c1}, {"2", c2}, {"3", c3},   {"4", c4},     {"5", c5},   {"6", c6},  {"7", c7},
      {"8", c8}, {"9", c9}, {"10", c10}, {"11", c11}, {"11s", c11s}, {"12", c12}};
  std::vector<CriterionResult> out;
  for (const auto& [id, f] : all) out.push_back(guarded(id, f));
  return out;
}

bool all_counted_pass(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (r.counted && !r.pass) return false;
  return true;
}

bool only_known_failures(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (r.counted && !r.pass && !r.known_unattainable) return false;
  return true;
}

void print_acceptance(std::ostream& out, const std::vector<CriterionResult>& results) {
  int pass = 0, counted = 0;
  for (const auto& r : results) {
    std::string tag = r.pass ? "PASS" : (r.known_unattainable ? "FAIL (unattainable as stated)" : "FAIL");
    if (!r.counted) tag += " [not counted]";
    out << "[" << r.id << "] " << tag << "  " << r.title << "\n";
    for (const auto& n : r.notes) out << "      " << n << "\n";
    if (r.counted) {
      ++counted;
      pass += r.pass ? 1 : 0;
    }
  }
  out << pass << "/" << counted << " criteria pass\n";
}

}  // namespace ksol
