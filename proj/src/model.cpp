#include "ksol/model.hpp"

#include "ksol/errors.hpp"

#include <cmath>

namespace ksol {

std::string to_string(SolitonClass c) {
  switch (c) {
    case SolitonClass::Steady: return "steady";
    case SolitonClass::Expanding: return "expanding";
    case SolitonClass::ShrinkingCompact: return "shrinking_compact";
    case SolitonClass::ShrinkingNoncompact: return "shrinking_noncompact";
    case SolitonClass::Einstein: return "einstein";
  }
  return "unknown";
}

int SolitonConfig::total_n() const {
  int s = 0;
  for (const auto& f : factors) s += f.n;
  return s;
}

namespace {

double first_integral_constant(double kappa1, double e_star, double eps, double kappa0) {
  // phi = kappa1 (s + kappa0) vanishes identically when kappa1 = 0, so c = 0 there.
  return kappa1 == 0.0 ? 0.0 : kappa1 * (e_star - eps * kappa0);
}

}  // namespace

SolitonConfig derive_config(const Rational& epsilon, std::vector<FanoFactor> factors,
                            BoundaryStructure boundary, double kappa1, double kappa0,
                            std::optional<std::vector<Rational>> sigma_inputs) {
  if (factors.empty()) throw AdmissibilityError("at least one factor is required");
  for (const auto& f : factors) {
    if (f.n < 0) throw AdmissibilityError("factor dimension n must be >= 0");
    if (f.q == 0) throw AdmissibilityError("Euler coefficient q must be nonzero");
  }
  if (boundary.compact_end && factors.size() < 2)
    throw AdmissibilityError("a compact end needs a separate end factor (r >= 2)");
  if (!std::isfinite(kappa1) || !std::isfinite(kappa0)) throw AdmissibilityError("kappa must be finite");

  SolitonConfig cfg;
  cfg.epsilon = epsilon;
  cfg.factors = std::move(factors);
  cfg.boundary = boundary;
  cfg.kappa1 = kappa1;
  cfg.kappa0 = kappa0;
  const int n1 = cfg.factors.front().n;
  cfg.E_star = Rational(2 * n1 + 2);

  const std::size_t r = cfg.factors.size();
  cfg.sigmas.assign(r, Rational(0));
  if (epsilon != 0) {
    for (std::size_t i = 0; i < r; ++i) {
      const auto& f = cfg.factors[i];
      cfg.sigmas[i] = (cfg.E_star + 2 * (f.p / f.q)) / epsilon;
    }
  } else {
    bool needed = false;
    for (std::size_t i = 1; i < r; ++i) needed = needed || cfg.factors[i].n > 0;
    if (sigma_inputs) {
      if (sigma_inputs->size() != r) throw AdmissibilityError("sigmas must have one entry per factor");
      if ((*sigma_inputs)[0] != 0) throw AdmissibilityError("sigma_1 must be 0 at the collapsed end");
      cfg.sigmas = *sigma_inputs;
    } else if (needed) {
      throw AdmissibilityError("steady instances need sigma inputs for every factor");
    }
  }
  if (boundary.compact_end) cfg.s_star = -cfg.sigmas.back();
  cfg.c = first_integral_constant(kappa1, cfg.e_star(), cfg.eps(), kappa0);
  return cfg;
}

SolitonConfig with_kappa1(const SolitonConfig& cfg, double kappa1) {
  SolitonConfig out = cfg;
  out.kappa1 = kappa1;
  out.c = first_integral_constant(kappa1, out.e_star(), out.eps(), out.kappa0);
  return out;
}

bool ValidationReport::structurally_admissible() const {
  for (const auto& v : violations)
    if (v.kind == ViolationKind::Structural) return false;
  return true;
}

bool ValidationReport::has(const std::string& name) const {
  for (const auto& v : violations)
    if (v.name == name) return true;
  return false;
}

SolitonClass family(const SolitonConfig& cfg) {
  if (cfg.epsilon == 0) return SolitonClass::Steady;
  if (cfg.epsilon > 0) return SolitonClass::Expanding;
  return cfg.compact() ? SolitonClass::ShrinkingCompact : SolitonClass::ShrinkingNoncompact;
}

SolitonClass classify(const SolitonConfig& cfg) {
  if (cfg.kappa1 == 0.0) return SolitonClass::Einstein;
  return family(cfg);
}

ValidationReport validate(const SolitonConfig& cfg) {
  ValidationReport rep;
  rep.family = family(cfg);
  rep.soliton_class = classify(cfg);
  rep.einstein = cfg.kappa1 == 0.0;
  auto fail = [&](std::string name, std::string detail, ViolationKind kind = ViolationKind::Structural) {
    rep.violations.push_back({std::move(name), std::move(detail), kind});
  };

  const std::size_t r = cfg.r();
  const auto& f1 = cfg.factors.front();
  const int n1 = f1.n;
  const int nr = cfg.factors.back().n;

  // Normalized pair (n1+1, -1); any positive multiple describes the same metric.
  if (f1.q == -1) {
    if (f1.p != n1 + 1) fail("p1 must be n1+1", "factor 1 collapses as a projective space CP^{n1}");
  } else if (!(f1.q < 0) || f1.p != -(n1 + 1) * f1.q) {
    fail("q1 must be -1", "the collapsing circle at s = 0 forces beta_1'(0) = 1 (up to rescaling p1 = -(n1+1) q1)");
  }
  if (cfg.boundary.collapse_at_zero == CollapseAtZero::CircleOnly && n1 != 0)
    fail("circle-only collapse needs n1 = 0", "n1 = " + std::to_string(n1));
  if (cfg.boundary.collapse_at_zero == CollapseAtZero::FactorOne && n1 < 1)
    fail("factor-one collapse needs n1 >= 1", "n1 = " + std::to_string(n1));
  if (cfg.sigmas.size() != r || cfg.sigmas[0] != 0) fail("sigma1 must be 0", "collapsed end sits at s = 0");

  const bool compact = cfg.compact();
  if (compact) {
    const auto& fr = cfg.factors.back();
    if (!(cfg.epsilon < 0)) fail("compact end requires a shrinking soliton", "only epsilon < 0 closes up");
    if (fr.q == 1) {
      if (fr.p != nr + 1) fail("pr must be nr+1", "factor r collapses as a projective space CP^{nr}");
    } else if (!(fr.q > 0) || fr.p != (nr + 1) * fr.q) {
      fail("qr must be +1", "the collapsing circle at s* forces beta_r'(s*) = -1 (up to rescaling pr = (nr+1) qr)");
    }
    const auto& end = *cfg.boundary.compact_end;
    if (end.collapse == CollapseAtEnd::CircleOnly && nr != 0)
      fail("circle-only end needs nr = 0", "nr = " + std::to_string(nr));
    if (end.collapse == CollapseAtEnd::FactorR && nr < 1)
      fail("factor-r end needs nr >= 1", "nr = " + std::to_string(nr));
    const Rational expected(2 * (n1 + nr + 2));
    if (cfg.s_star != expected)
      fail("s* must be 2(n1+nr+2)", "s* = " + to_string(cfg.s_star) + ", expected " + to_string(expected));
    if (end.s_star && from_double(*end.s_star) != expected)
      fail("s* must be 2(n1+nr+2)", "given s* does not match");
  }

  // Consistency E* = eps sigma_i - 2 p_i / q_i on every factor that carries volume.
  for (std::size_t i = 0; i < r; ++i) {
    const auto& f = cfg.factors[i];
    if (f.n == 0) continue;
    const Rational rhs = cfg.epsilon * cfg.sigmas[i] - 2 * (f.p / f.q);
    if (rhs != cfg.E_star) {
      const std::string name = cfg.epsilon == 0 ? "steady equality failed" : "consistency condition failed";
      fail(name, "factor " + std::to_string(i + 1) + ": E* = " + to_string(cfg.E_star) + " but eps*sigma - 2p/q = " +
                     to_string(rhs));
    }
  }
  if (cfg.kappa1 != 0.0) {
    const double gap = cfg.e_star() - cfg.eps() * cfg.kappa0 - cfg.c / cfg.kappa1;
    if (std::abs(gap) > 1e-12 * (1.0 + std::abs(cfg.e_star())))
      fail("first-integral constant inconsistent", "E* - eps kappa0 - c/kappa1 = " + std::to_string(gap));
  }

  // beta_i = -q_i (s + sigma_i) > 0 on the open interior.
  for (std::size_t i = 1; i < r; ++i) {
    const auto& f = cfg.factors[i];
    if (f.n == 0) continue;
    if (compact && i == r - 1) continue;  // the end factor is s* - s by construction
    const Rational b0 = Rational(-f.q) * cfg.sigmas[i];
    const std::string tag = "factor " + std::to_string(i + 1);
    if (compact) {
      const Rational bs = Rational(-f.q) * (cfg.s_star + cfg.sigmas[i]);
      if (!(b0 > 0) || !(bs > 0)) fail("beta must stay positive", tag + " vanishes on [0, s*]");
    } else {
      if (!(f.q < 0)) fail("beta must stay positive", tag + " has q > 0 on an unbounded interval");
      if (!(cfg.sigmas[i] > 0)) fail("sigma must be positive", tag + ": sigma = " + to_string(cfg.sigmas[i]));
    }
    if (f.p <= 0) {
      if (!(cfg.epsilon > 0)) fail("non-Fano factor needs an expanding soliton", tag);
      else if (!(f.q < 0)) fail("non-Fano factor needs q < 0", tag);
    }
  }

  const long m1 = n1 + 1;
  for (std::size_t i = 1; i < r; ++i) {
    const auto& f = cfg.factors[i];
    if (f.n == 0) continue;
    const std::string tag = "factor " + std::to_string(i + 1);
    switch (rep.family) {
      case SolitonClass::Steady:
        // The equality itself is the consistency check above.
        break;
      case SolitonClass::Expanding:
        if (f.p > 0 && !(-f.q * m1 > f.p)) fail("expanding inequality failed", tag + ": need -q(n1+1) > p");
        break;
      case SolitonClass::ShrinkingCompact:
        if (i == r - 1) break;
        if (!(-m1 * f.q < f.p)) fail("compact inequality at s=0 failed", tag + ": need -(n1+1)q < p");
        if (!((nr + 1) * f.q < f.p)) fail("compact inequality at s* failed", tag + ": need (nr+1)q < p");
        break;
      case SolitonClass::ShrinkingNoncompact:
        if (!(0 < -m1 * f.q && -m1 * f.q < f.p))
          fail("noncompact shrinker inequality failed", tag + ": need 0 < -(n1+1)q < p");
        break;
      case SolitonClass::Einstein:
        break;
    }
  }

  if (rep.family == SolitonClass::Steady && compact) fail("steady solitons have no compact end", "");
  if ((rep.family == SolitonClass::Steady || rep.family == SolitonClass::Expanding) && cfg.kappa1 > 0)
    fail("kappa1 must be <= 0", "kappa1 > 0 gives an incomplete metric", ViolationKind::Completeness);
  if (rep.family == SolitonClass::ShrinkingNoncompact && !(cfg.kappa1 > 0))
    fail("kappa1 must be > 0", "noncompact shrinkers need kappa1 > 0", ViolationKind::Completeness);

  rep.derived["E_star"] = cfg.e_star();
  rep.derived["c"] = cfg.c;
  rep.derived["kappa1"] = cfg.kappa1;
  if (compact) rep.derived["s_star"] = cfg.s_star_d();
  for (std::size_t i = 0; i < r; ++i) rep.derived["sigma_" + std::to_string(i + 1)] = cfg.sigma(i);
  return rep;
}

}  // namespace ksol
