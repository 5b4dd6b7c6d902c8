#include "ksol/futaki.hpp"

#include "ksol/errors.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>

namespace ksol {

namespace {

void require_compact_shrinker(const SolitonConfig& cfg, const char* what) {
  const ValidationReport rep = validate(cfg);
  if (rep.family != SolitonClass::ShrinkingCompact || !rep.structurally_admissible())
    throw AdmissibilityError(std::string(what) + ": needs an admissible compact shrinking configuration");
}

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

Rational factorial(int k) {
  BigInt out = 1;
  for (int j = 2; j <= k; ++j) out *= j;
  return Rational(out);
}

// I on [0, n1+nr+2] after x = w - n1 - 1; exact shift keeps the endpoints exact.
struct XForm {
  RationalPoly shifted;
  double length = 0.0;
  double operator()(double kappa1) const { return exp_poly_integral(shifted, 2.0 * kappa1, 0.0, length); }
};

XForm make_x_form(const SolitonConfig& cfg) {
  XForm f;
  f.shifted = futaki_x_poly(cfg).shifted(Rational(-(cfg.n_first() + 1)));
  f.length = cfg.n_first() + cfg.n_last() + 2;
  return f;
}

}  // namespace

RationalPoly futaki_x_poly(const SolitonConfig& cfg) {
  std::vector<std::pair<Rational, int>> shifts;
  for (const auto& f : cfg.factors)
    if (f.n > 0) shifts.emplace_back(-f.p / f.q, f.n);
  return build_shifted_product(shifts) * RationalPoly::monomial(Rational(1), 1);
}

RationalPoly futaki_y_poly(const SolitonConfig& cfg) {
  std::vector<std::pair<Rational, int>> shifts;
  const std::size_t r = cfg.r();
  if (cfg.n_first() > 0) shifts.emplace_back(Rational(0), cfg.n_first());
  if (cfg.n_last() > 0) shifts.emplace_back(-cfg.s_star, cfg.n_last());
  for (std::size_t i = 1; i + 1 < r; ++i)
    if (cfg.factors[i].n > 0) shifts.emplace_back(cfg.sigmas[i], cfg.factors[i].n);
  shifts.emplace_back(Rational(-(2 * cfg.n_first() + 2)), 1);
  return build_shifted_product(shifts);
}

FutakiEvaluation futaki_integral(const SolitonConfig& cfg, double kappa1) {
  require_compact_shrinker(cfg, "futaki_integral");
  FutakiEvaluation out;
  out.kappa1 = kappa1;
  const XForm xf = make_x_form(cfg);
  out.value = xf(kappa1);
  if (kappa1 == 0.0) {
    out.exact_value = poly_integral_exact(futaki_x_poly(cfg), Rational(-(cfg.n_first() + 1)), Rational(cfg.n_last() + 1));
    out.value = to_double(*out.exact_value);
  }
  out.integrand_poly = futaki_y_poly(cfg);
  const double scale = std::ldexp(1.0, -(cfg.total_n() + 2));
  out.y_form_value = scale * exp_poly_integral(out.integrand_poly, kappa1, 0.0, cfg.s_star_d());
  return out;
}

int asymptotic_sign(const SolitonConfig& cfg, Direction d) {
  require_compact_shrinker(cfg, "asymptotic_sign");
  const int nr = cfg.n_last();
  int sign = d == Direction::PlusInfinity ? (nr % 2 == 0 ? -1 : 1) : (nr % 2 == 0 ? 1 : -1);
  for (std::size_t i = 1; i + 1 < cfg.r(); ++i) {
    const int n = cfg.factors[i].n;
    if (n % 2 == 0) continue;
    const Rational base = d == Direction::PlusInfinity ? cfg.sigmas[i] : cfg.s_star + cfg.sigmas[i];
    sign *= sign_of(base);
  }
  return sign;
}

RootResult find_kappa1_compact(const SolitonConfig& cfg, double search_halfwidth, double step) {
  require_compact_shrinker(cfg, "find_kappa1_compact");
  if (!(step > 0.0) || !(search_halfwidth >= step)) throw std::invalid_argument("find_kappa1_compact: bad scan grid");
  const XForm I = make_x_form(cfg);
  const Rational exact0 =
      poly_integral_exact(futaki_x_poly(cfg), Rational(-(cfg.n_first() + 1)), Rational(cfg.n_last() + 1));
  RootResult out;
  if (exact0 == 0) return out;  // Einstein: kappa1 = 0 exactly

  const double i0 = to_double(exact0);
  const int plus = asymptotic_sign(cfg, Direction::PlusInfinity);
  const int minus = asymptotic_sign(cfg, Direction::MinusInfinity);
  auto sgn = [](double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); };

  // Scan each side until the asymptotic sign shows up.
  std::vector<std::pair<double, double>> grid{{0.0, i0}};
  for (int side : {1, -1}) {
    const int want = side > 0 ? plus : minus;
    std::vector<std::pair<double, double>> pts;
    bool matched = false;
    for (int k = 1; k * step <= search_halfwidth + 1e-12; ++k) {
      const double x = side * k * step;
      const double y = I(x);
      pts.emplace_back(x, y);
      if (sgn(y) == want) {
        matched = true;
        break;
      }
    }
    if (!matched) throw NumericError("find_kappa1_compact: asymptotic sign not reached within the half-width");
    if (side > 0)
      grid.insert(grid.end(), pts.begin(), pts.end());
    else
      grid.insert(grid.begin(), pts.rbegin(), pts.rend());
  }

  double best = std::numeric_limits<double>::infinity();
  std::pair<double, double> chosen;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const auto [a, fa] = grid[k];
    const auto [b, fb] = grid[k + 1];
    if (fb == 0.0) {
      out.scan_brackets.emplace_back(b, b);
    } else if (sgn(fa) * sgn(fb) < 0) {
      out.scan_brackets.emplace_back(a, b);
    } else {
      continue;
    }
    const auto& br = out.scan_brackets.back();
    const double dist = std::min(std::abs(br.first), std::abs(br.second));
    if (dist < best) {
      best = dist;
      chosen = br;
    }
  }
  if (out.scan_brackets.empty()) throw NumericError("find_kappa1_compact: no sign change found");

  out.bracket = chosen;
  if (chosen.first == chosen.second) {
    out.kappa1 = chosen.first;
  } else {
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(I, chosen.first, chosen.second, I(chosen.first),
                                                        I(chosen.second), boost::math::tools::eps_tolerance<double>(52),
                                                        iters);
    out.iterations = static_cast<int>(iters);
    out.bracket = root;
    // Keep the endpoint with the smaller residual.
    out.kappa1 = std::abs(I(root.first)) <= std::abs(I(root.second)) ? root.first : root.second;
  }
  out.residual = std::abs(I(out.kappa1));
  if (!(out.residual < 1e-12 * std::max(1.0, std::abs(i0))))
    throw NumericError("find_kappa1_compact: refinement did not reach the residual target");
  return out;
}

RationalPoly chi_poly(const SolitonConfig& cfg) {
  const int n1 = cfg.n_first();
  RationalPoly psi({cfg.E_star, Rational(-1)});
  psi = psi * RationalPoly::monomial(Rational(1), n1);
  for (std::size_t i = 1; i < cfg.r(); ++i) {
    const auto& f = cfg.factors[i];
    if (f.n == 0) continue;
    psi = psi * (RationalPoly::linear(cfg.sigmas[i]) * Rational(abs(f.q))).pow(f.n);
  }
  std::vector<Rational> chi;
  for (int k = n1; k <= psi.degree(); ++k) chi.push_back(factorial(k) * psi.coeff(k));
  return RationalPoly(chi);
}

RootResult find_kappa1_noncompact(const SolitonConfig& cfg) {
  const ValidationReport rep = validate(cfg);
  if (rep.family != SolitonClass::ShrinkingNoncompact || !rep.structurally_admissible())
    throw AdmissibilityError("find_kappa1_noncompact: needs an admissible noncompact shrinking configuration");
  const RationalPoly chi = chi_poly(cfg);
  RootResult out;
  out.uniqueness_certificate = sign_changes(chi);
  if (*out.uniqueness_certificate != 1)
    throw NumericError("find_kappa1_noncompact: coefficient sign changes = " +
                       std::to_string(*out.uniqueness_certificate) + ", expected exactly 1");

  // Cauchy bound on positive roots.
  const auto& c = chi.coeffs();
  Rational bound = 0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    const Rational ratio = abs(c[k] / c.back());
    if (ratio > bound) bound = ratio;
  }
  double lo = 0.0, hi = to_double(bound + 1) * (1.0 + 1e-15) + 1e-300;
  const int s_lo = sign_of(chi(Rational(0)));
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++out.iterations;
    const int s = sign_of(chi(from_double(mid)));
    if (s == 0) {
      lo = hi = mid;
      break;
    }
    (s == s_lo ? lo : hi) = mid;
  }
  const double y = std::abs(to_double(chi(from_double(lo)))) <= std::abs(to_double(chi(from_double(hi)))) ? lo : hi;
  out.kappa1 = 1.0 / y;
  out.bracket = {1.0 / hi, lo > 0.0 ? 1.0 / lo : std::numeric_limits<double>::infinity()};
  out.residual = std::abs(to_double(chi(from_double(y))));
  return out;
}

SolitonConfig reflected_config(const SolitonConfig& cfg) {
  require_compact_shrinker(cfg, "reflected_config");
  std::vector<FanoFactor> f(cfg.factors.rbegin(), cfg.factors.rend());
  for (auto& x : f) x.q = -x.q;
  BoundaryStructure b;
  b.collapse_at_zero = f.front().n > 0 ? CollapseAtZero::FactorOne : CollapseAtZero::CircleOnly;
  b.compact_end = CompactEnd{f.back().n > 0 ? CollapseAtEnd::FactorR : CollapseAtEnd::CircleOnly, std::nullopt};
  return derive_config(cfg.epsilon, f, b, -cfg.kappa1, cfg.kappa0);
}

std::pair<double, double> symmetry_identity_check(const SolitonConfig& cfg, double kappa1) {
  require_compact_shrinker(cfg, "symmetry_identity_check");
  if (cfg.n_first() != cfg.n_last()) throw std::invalid_argument("symmetry_identity_check: needs n1 = nr");
  const double lhs = futaki_integral(reflected_config(cfg), -kappa1).value;
  const double sign = (1 + cfg.total_n()) % 2 == 0 ? 1.0 : -1.0;
  const double rhs = sign * std::exp(4.0 * kappa1 * (cfg.n_first() + 1)) * futaki_integral(cfg, kappa1).value;
  return {lhs, rhs};
}

}  // namespace ksol
