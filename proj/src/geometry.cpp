#include "ksol/geometry.hpp"

#include "ksol/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ksol {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
// The integrands are smooth after substitution; deeper recursion only chases rounding noise.
constexpr unsigned kMaxDepth = 10;

// Safeguarded Newton for an increasing g with g(lo) <= target <= g(hi). value(x) returns g(x) given
// the current lower anchor, slope(x) returns g'(x) (may be infinite at a collapsed end).
template <class Value, class Slope>
double newton_bracketed(double lo, double g_lo, double hi, double target, const Value& value, const Slope& slope) {
  double x = lo, gx = g_lo;
  for (int it = 0; it < 100; ++it) {
    const double d = slope(x);
    double cand = x - (gx - target) / d;
    if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
    if (cand <= lo || cand >= hi) break;
    const double gc = value(lo, g_lo, cand);
    const double step = std::abs(cand - x);
    x = cand;
    gx = gc;
    if (gc < target) {
      lo = cand;
      g_lo = gc;
    } else {
      hi = cand;
    }
    if (std::abs(gc - target) <= 4e-16 * std::max(1.0, std::abs(target)) || step <= 1e-15 * std::max(1.0, std::abs(x)))
      break;
  }
  return x;
}

// Boost's GK compares an unscaled error against tol times the scaled estimate, so short intervals recurse
// to max depth; mapping onto [0, 1] restores a relative criterion.
template <class F>
double integrate_unit(const F& f, double a, double b, double rel_tol) {
  const double h = b - a;
  return h * GK::integrate([&](double u) { return f(a + h * u); }, 0.0, 1.0, kMaxDepth, rel_tol);
}

// Adaptive GK on [a, b], first on [a, min(b, 1)] and then on doubling pieces, so long ranges
// in the substituted variable never land in a single panel.
template <class F>
double integrate_pieces(const F& f, double a, double b, double rel_tol) {
  if (!(b > a)) return 0.0;
  double total = 0.0, lo = a;
  while (lo < b) {
    const double hi = std::min(b, lo < 1.0 ? 1.0 : 2.0 * lo);
    total += integrate_unit(f, lo, hi, rel_tol);
    lo = hi;
  }
  return total;
}

double checked_alpha(const Profile& p, double x) {
  const double a = p.alpha(x);
  if (!(a > 0.0)) throw AdmissibilityError("alpha <= 0 at s = " + std::to_string(x) + " on the geodesic path");
  return a;
}

double inv_sqrt_alpha_near(const Profile& p, double x, double w) {
  // 2w / sqrt(alpha) with alpha ~ 2 w^2 at a collapsed end; the limit is sqrt 2.
  if (w == 0.0) return std::sqrt(2.0);
  return 2.0 * w / std::sqrt(checked_alpha(p, x));
}

}  // namespace

double t_segment(const Profile& p, double a, double b, double rel_tol) {
  if (!(a >= 0.0) || b < a) throw std::invalid_argument("t_segment: need 0 <= a <= b");
  if (p.compact() && b > p.s_hi()) throw std::out_of_range("t_segment: beyond s*");
  const double tol = rel_tol;
  const double mid = p.compact() ? 0.5 * p.s_hi() : std::numeric_limits<double>::infinity();
  double total = 0.0;
  if (a < mid) {
    const double hi = std::min(b, mid);
    // x = w^2
    total += integrate_pieces([&](double w) { return inv_sqrt_alpha_near(p, w * w, w); }, std::sqrt(a), std::sqrt(hi), tol);
  }
  if (b > mid) {
    const double s_star = p.s_hi();
    const double lo = std::max(a, mid);
    // x = s* - w^2
    total += integrate_pieces([&](double w) { return inv_sqrt_alpha_near(p, s_star - w * w, w); },
                              std::sqrt(s_star - b), std::sqrt(s_star - lo), tol);
  }
  return total;
}

double t_of_s(const Profile& p, double s, double rel_tol) { return t_segment(p, 0.0, s, rel_tol); }

namespace {

// Solves t(s) = target starting from a known point (s0, t0) with t0 <= target.
double invert_from(const Profile& p, double s0, double t0, double target) {
  if (target <= t0) return s0;
  double lo = s0, t_lo = t0;
  double hi = p.compact() ? p.s_hi() : std::max(2.0 * s0, s0 + 1.0);
  double t_hi = t_lo + t_segment(p, lo, hi);
  if (p.compact()) {
    if (t_hi < target) throw std::out_of_range("s_of_t: t beyond the compact end");
  } else {
    while (t_hi < target) {
      if (hi > 1e300) throw std::out_of_range("s_of_t: t beyond the reachable range");
      lo = hi;
      t_lo = t_hi;
      hi *= 2.0;
      t_hi = t_lo + t_segment(p, lo, hi);
    }
  }
  return newton_bracketed(
      lo, t_lo, hi, target, [&](double a, double ta, double x) { return ta + t_segment(p, a, x); },
      [&](double x) {
        const double a = p.alpha(x);
        return a > 0.0 ? 1.0 / std::sqrt(a) : std::numeric_limits<double>::infinity();
      });
}

}  // namespace

double s_of_t(const Profile& p, double t) {
  if (!(t >= 0.0)) throw std::out_of_range("s_of_t: t must be >= 0");
  return invert_from(p, 0.0, 0.0, t);
}

MetricFunctions metric_functions(const Profile& p, const std::vector<double>& t_grid) {
  MetricFunctions m;
  m.t_grid = t_grid;
  const std::size_t r = p.config().r();
  m.g.assign(r, {});
  double s_prev = 0.0, t_prev = 0.0;
  for (double t : t_grid) {
    if (!(t >= t_prev)) throw std::invalid_argument("metric_functions: t grid must be nondecreasing and >= 0");
    const double s = invert_from(p, s_prev, t_prev, t);
    // Re-anchor on the exact t of the accepted s so solver error does not accumulate.
    t_prev = t_prev + t_segment(p, s_prev, s);
    s_prev = s;
    const ProfileSample x = p.sample(s);
    m.s_of_t.push_back(s);
    m.f.push_back(std::sqrt(x.alpha));
    m.u.push_back(x.phi);
    for (std::size_t i = 0; i < r; ++i) m.g[i].push_back(std::sqrt(x.beta[i]));
  }
  return m;
}

TSamples to_t_samples(const MetricFunctions& m) {
  const std::size_t n = m.t_grid.size();
  if (n < 2) throw std::invalid_argument("to_t_samples: need at least 2 points");
  TSamples x;
  x.t0 = m.t_grid.front();
  x.h = (m.t_grid.back() - x.t0) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(m.t_grid[k] - (x.t0 + static_cast<double>(k) * x.h)) > 1e-9 * std::max(1.0, std::abs(m.t_grid[k])))
      throw std::invalid_argument("to_t_samples: grid is not uniform");
  x.f = m.f;
  x.u = m.u;
  x.g = m.g;
  return x;
}

std::string to_string(Completeness c) {
  switch (c) {
    case Completeness::CigarParaboloid: return "CigarParaboloid";
    case Completeness::AsymptoticallyConical: return "AsymptoticallyConical";
    case Completeness::Compact: return "Compact";
    case Completeness::Incomplete: return "Incomplete";
    case Completeness::Hyperbolic: return "Hyperbolic";
  }
  return "?";
}

CompletenessReport completeness_report(const Profile& p) {
  CompletenessReport rep;
  if (p.compact()) {
    const double s_star = p.s_hi();
    for (int k = 1; k < 400; ++k) {
      const double s = s_star * k / 400.0;
      if (!(p.alpha(s) > 0.0)) {
        rep.reason = "alpha vanishes inside (0, s*) near s = " + std::to_string(s);
        rep.geodesic_length = std::numeric_limits<double>::quiet_NaN();
        return rep;
      }
    }
    if (!p.exp_mode_dropped()) {
      rep.reason = "alpha does not close at s*: kappa1 is not a root of the Futaki-type integral";
      rep.geodesic_length = std::numeric_limits<double>::quiet_NaN();
      return rep;
    }
    rep.cls = Completeness::Compact;
    rep.geodesic_length = t_of_s(p, s_star);
    rep.reason = "alpha > 0 on (0, s*) and vanishes at both ends";
    return rep;
  }

  // Noncompact: scan for a zero or blow-up, then read the asymptotics off s alpha'/alpha.
  constexpr double kProbe1 = 1e3, kProbe2 = 1e4;
  double last_ok = 0.0;
  for (int k = 0; k <= 140; ++k) {
    const double s = 1e-3 * std::pow(10.0, k / 20.0);
    const double a = p.alpha(s);
    if (!std::isfinite(a) || a > 1e200) {
      rep.reason = "alpha grows exponentially (far-end mode present)";
      // Remaining length ~ 2 / (kappa1 sqrt(alpha)) past a point where alpha is huge.
      double se = last_ok;
      while (p.alpha(se) < 1e20) se = std::max(2.0 * se, 1e-3);
      rep.geodesic_length = t_of_s(p, se) + 2.0 / (p.config().kappa1 * std::sqrt(p.alpha(se)));
      return rep;
    }
    if (!(a > 0.0)) {
      rep.reason = "alpha reaches 0 at finite s (between " + std::to_string(last_ok) + " and " + std::to_string(s) + ")";
      double lo = last_ok, hi = s;
      for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double m = 0.5 * (lo + hi);
        (p.alpha(m) > 0.0 ? lo : hi) = m;
      }
      try {
        rep.geodesic_length = t_of_s(p, lo, 1e-6);
      } catch (const std::exception&) {
        rep.geodesic_length = std::numeric_limits<double>::quiet_NaN();
      }
      return rep;
    }
    last_ok = s;
  }

  const ProfileSample x1 = p.sample(kProbe1), x2 = p.sample(kProbe2);
  const double slope = kProbe2 * x2.dalpha / x2.alpha;
  const double t2 = t_of_s(p, kProbe2);
  const double t_slope = kProbe2 / (std::sqrt(x2.alpha) * t2);
  rep.slope_estimates["alpha_slope"] = slope;
  rep.slope_estimates["alpha_ratio"] = x2.alpha / x1.alpha;
  rep.slope_estimates["t_slope"] = t_slope;
  rep.slope_estimates["f_slope"] = 0.5 * slope / t_slope;
  for (std::size_t i = p.config().r(); i-- > 0;) {
    if (p.config().factors[i].n == 0) continue;
    rep.slope_estimates["g_slope"] = 0.5 * kProbe2 * x2.dbeta[i] / x2.beta[i] / t_slope;
    break;
  }
  rep.geodesic_length = std::numeric_limits<double>::infinity();
  rep.length_infinite = true;
  if (std::abs(slope) < 0.05) {
    rep.cls = Completeness::CigarParaboloid;
    rep.reason = "alpha bounded: circle fibre of bounded length, base growing like t^{1/2}";
  } else if (std::abs(slope - 1.0) < 0.05) {
    rep.cls = Completeness::AsymptoticallyConical;
    rep.reason = "alpha ~ s: f and g_i grow linearly in t";
  } else if (std::abs(slope - 2.0) < 0.05) {
    rep.cls = Completeness::Hyperbolic;
    rep.reason = "alpha ~ s^2: f and g_i grow exponentially in t";
  } else {
    rep.cls = Completeness::Incomplete;
    rep.length_infinite = false;
    rep.geodesic_length = std::numeric_limits<double>::quiet_NaN();
    rep.reason = "unrecognized growth of alpha (s alpha'/alpha = " + std::to_string(slope) + ")";
  }
  return rep;
}

FlowMap FlowMap::build(const Profile& p) {
  const ValidationReport rep = validate(p.config());
  if (!rep.admissible()) throw AdmissibilityError("FlowMap: profile is not admissible");
  if (p.config().kappa1 == 0.0) throw AdmissibilityError("FlowMap: kappa1 = 0, the potential is constant");
  FlowMap m(p);
  m.eps_ = p.config().eps();
  m.kappa_ = p.config().kappa1;
  m.compact_ = p.compact();
  m.s_star_ = p.compact() ? p.s_hi() : 0.0;

  if (m.compact_) {
    const double half = 0.5 * m.s_star_;
    for (double s = 1e-10; s < half; s *= 2.0) m.nodes_.push_back(s);
    m.nodes_.push_back(half);
    std::vector<double> right;
    for (double d = 1e-10; d < half; d *= 2.0) right.push_back(m.s_star_ - d);
    m.nodes_.insert(m.nodes_.end(), right.rbegin(), right.rend());
  } else {
    for (double s = 1e-10; s <= 1e8; s *= 2.0) m.nodes_.push_back(s);
  }

  // Anchor F = 0 at the middle node.
  const std::size_t n = m.nodes_.size(), c = n / 2;
  m.values_.assign(n, 0.0);
  for (std::size_t k = c + 1; k < n; ++k) m.values_[k] = m.values_[k - 1] + m.panel(m.nodes_[k - 1], m.nodes_[k]);
  for (std::size_t k = c; k-- > 0;) m.values_[k] = m.values_[k + 1] - m.panel(m.nodes_[k], m.nodes_[k + 1]);
  return m;
}

double FlowMap::panel(double a, double b) const {
  // dx / (kappa1 alpha) in z = log x, or z = log(s* - x) on the far half of a compact profile.
  if (compact_ && a >= 0.5 * s_star_) {
    const auto f = [&](double z) {
      const double d = std::exp(z);
      return d / (kappa_ * profile_.alpha(s_star_ - d));
    };
    return integrate_unit(f, std::log(s_star_ - b), std::log(s_star_ - a), 1e-13);
  }
  const auto f = [&](double z) {
    const double x = std::exp(z);
    return x / (kappa_ * profile_.alpha(x));
  };
  return integrate_unit(f, std::log(a), std::log(b), 1e-13);
}

double FlowMap::F(double s) const {
  if (!(s >= s_min() && s <= s_max())) throw std::out_of_range("FlowMap::F: s outside the tabulated range");
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s);
  const std::size_t k = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  if (nodes_[k] == s) return values_[k];
  return values_[k] + panel(nodes_[k], s);
}

double FlowMap::F_inverse(double y) const {
  const bool increasing = kappa_ > 0.0;
  const double lo_v = increasing ? values_.front() : values_.back();
  const double hi_v = increasing ? values_.back() : values_.front();
  if (!(y >= lo_v && y <= hi_v)) throw std::out_of_range("FlowMap::F_inverse: value outside the tabulated range");
  std::size_t k = 0;
  while (k + 2 < nodes_.size() && (increasing ? values_[k + 1] < y : values_[k + 1] > y)) ++k;
  // Newton on the increasing function sign(kappa1) F, anchored at node k.
  const double sg = increasing ? 1.0 : -1.0;
  const double s = newton_bracketed(
      nodes_[k], sg * values_[k], nodes_[k + 1], sg * y,
      [&](double, double, double x) { return sg * (values_[k] + panel(nodes_[k], x)); },
      [&](double x) { return 1.0 / (std::abs(kappa_) * profile_.alpha(x)); });
  return s;
}

double FlowMap::xi(double tau, double t) const {
  const double one = 1.0 + eps_ * tau;
  if (!(one > 0.0)) throw std::out_of_range("FlowMap::xi: tau outside the flow's time domain");
  const double shift = eps_ == 0.0 ? tau : std::log(one) / eps_;
  const double s = s_of_t(profile_, t);
  return t_of_s(profile_, F_inverse(shift + F(s)));
}

double flow_trajectory(const Profile& p, double tau, double t) {
  if (p.config().kappa1 == 0.0) {
    if (!(1.0 + p.config().eps() * tau > 0.0)) throw std::out_of_range("flow_trajectory: tau outside the time domain");
    return t;
  }
  return FlowMap::build(p).xi(tau, t);
}

}  // namespace ksol
