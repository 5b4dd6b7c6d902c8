#include "doctest.h"
#include "support.hpp"

#include "ksol/catalog.hpp"
#include "ksol/errors.hpp"
#include "ksol/futaki.hpp"
#include "ksol/profile.hpp"

#include <random>

using namespace ksol;
using ksol::test::quad;

namespace {

Rational R(long n, long d = 1) { return Rational(n) / Rational(d); }

std::vector<SolitonConfig> compact_examples() {
  return {catalog::compact_mixed_quadric(), catalog::compact_equal_weights(), catalog::compact_blowdown_pair()};
}

// Integrand of I by direct evaluation, independent of the polynomial builders.
double integrand(const SolitonConfig& cfg, double k, double x) {
  double prod = x;
  for (const auto& f : cfg.factors) prod *= std::pow(x - to_double(f.p / f.q), f.n);
  return std::exp(-2.0 * k * (x + cfg.n_first() + 1)) * prod;
}

double futaki_by_quadrature(const SolitonConfig& cfg, double k) {
  return quad([&](double x) { return integrand(cfg, k, x); }, -(cfg.n_first() + 1.0), cfg.n_last() + 1.0);
}

SolitonConfig uneven_ends() {
  return derive_config(R(-1), {{0, 1, -1}, {1, 2, -1}, {1, 2, 1}},
                       {CollapseAtZero::CircleOnly, CompactEnd{CollapseAtEnd::FactorR, std::nullopt}}, 0.0);
}

}  // namespace

TEST_CASE("exact values at kappa1 = 0") {
  const auto a = futaki_integral(catalog::compact_mixed_quadric(), 0.0);
  REQUIRE(a.exact_value);
  CHECK(*a.exact_value == R(39, 5));
  CHECK(a.value == 7.8);
  CHECK(*futaki_integral(catalog::compact_equal_weights(), 0.0).exact_value == R(1368, 7));
  CHECK(*futaki_integral(catalog::compact_blowdown_pair(), 0.0).exact_value == R(-7680, 7));
  CHECK(*futaki_integral(catalog::compact_odd(), 0.0).exact_value == 0);
  CHECK_FALSE(futaki_integral(catalog::compact_mixed_quadric(), 0.1).exact_value);
}

TEST_CASE("integrand polynomial matches the hand expansion") {
  // (x+3/2)^2 (x-3)^2 x
  CHECK(futaki_x_poly(catalog::compact_mixed_quadric()) ==
        RationalPoly({R(0), R(81, 4), R(27, 2), R(-27, 4), R(-3), R(1)}));
}

TEST_CASE("mixed quadric at kappa1 = 1/2") {
  const double v = futaki_integral(catalog::compact_mixed_quadric(), 0.5).value;
  // Symbolic oracle, 20 digits: -0.72892210399626263811
  CHECK(std::abs(v - -0.72892210399626263811) < 1e-14);
  CHECK(std::abs(v - -0.7289) < 5e-4);
}

TEST_CASE("x-form and y-form agree") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> kd(-3.0, 3.0);
  for (const auto& cfg : compact_examples()) {
    for (int t = 0; t < 20; ++t) {
      const auto e = futaki_integral(cfg, kd(rng));
      CHECK(std::abs(e.value - e.y_form_value) <= 1e-11 * std::abs(e.value));
    }
  }
}

TEST_CASE("closed form agrees with adaptive quadrature") {
  for (const auto& cfg : compact_examples()) {
    for (double k : {-10.0, -4.5, -1.0, -0.3, 0.0, 0.2, 0.5, 1.7, 6.0, 10.0}) {
      const double got = futaki_integral(cfg, k).value;
      const double want = futaki_by_quadrature(cfg, k);
      CHECK_MESSAGE(std::abs(got - want) <= 1e-9 * std::abs(want), "k=" << k);
    }
  }
}

TEST_CASE("asymptotic signs") {
  const auto a = catalog::compact_mixed_quadric();
  CHECK(asymptotic_sign(a, Direction::PlusInfinity) == -1);
  CHECK(asymptotic_sign(a, Direction::MinusInfinity) == 1);
  CHECK(asymptotic_sign(catalog::compact_equal_weights(), Direction::PlusInfinity) == -1);
  for (const auto& cfg : compact_examples()) {
    const int plus = asymptotic_sign(cfg, Direction::PlusInfinity);
    const int minus = asymptotic_sign(cfg, Direction::MinusInfinity);
    CHECK(plus * minus == -1);
    CHECK((futaki_integral(cfg, 40.0).value > 0 ? 1 : -1) == plus);
    CHECK((futaki_integral(cfg, -40.0).value > 0 ? 1 : -1) == minus);
  }
  CHECK(asymptotic_sign(uneven_ends(), Direction::PlusInfinity) * asymptotic_sign(uneven_ends(), Direction::MinusInfinity) == -1);
}

TEST_CASE("compact roots") {
  const auto a = find_kappa1_compact(catalog::compact_mixed_quadric());
  CHECK(a.kappa1 > 0.0);
  CHECK(a.kappa1 < 0.5);
  CHECK(a.residual < 1e-10);
  CHECK(a.scan_brackets.size() == 1);
  CHECK(find_kappa1_compact(catalog::compact_equal_weights()).kappa1 > 0.0);
  CHECK(find_kappa1_compact(catalog::compact_blowdown_pair()).kappa1 > 0.0);
  CHECK(find_kappa1_compact(catalog::compact_odd()).kappa1 == 0.0);
  const auto u = find_kappa1_compact(uneven_ends());
  CHECK(std::abs(futaki_integral(uneven_ends(), u.kappa1).value) < 1e-12);
}

TEST_CASE("calibrated compact profiles close at s*") {
  for (auto cfg : compact_examples()) {
    cfg = with_kappa1(cfg, find_kappa1_compact(cfg).kappa1);
    const auto p = Profile::build(cfg);
    CHECK(p.exp_mode_dropped());
    CHECK(std::abs(p.alpha(p.s_hi())) < 1e-9);
    CHECK(p.sample(p.s_hi()).dalpha == doctest::Approx(-2.0).epsilon(1e-9));
    for (int k = 1; k < 40; ++k) CHECK(p.alpha(p.s_hi() * k / 40.0) > 0.0);
  }
  // Off the root the far-end mode survives and alpha(s*) is not zero.
  const auto off = Profile::build(with_kappa1(catalog::compact_mixed_quadric(), 0.5));
  CHECK_FALSE(off.exp_mode_dropped());
}

TEST_CASE("noncompact roots") {
  const auto lb = find_kappa1_noncompact(catalog::noncompact_line_bundle(0.0));
  CHECK(std::abs(lb.kappa1 - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(lb.uniqueness_certificate == 1);
  CHECK(chi_poly(catalog::noncompact_line_bundle(0.0)) == RationalPoly({R(4), R(0), R(-2)}));

  // Psi = 2 - x gives chi = 2 - y, so kappa1 = 1/2 (the Gaussian shrinker on flat space).
  const auto fl = find_kappa1_noncompact(catalog::noncompact_flat(0.0));
  CHECK(fl.kappa1 == 0.5);
  CHECK(fl.uniqueness_certificate == 1);

  const auto bd = find_kappa1_noncompact(catalog::noncompact_blowdown(0.0));
  CHECK(chi_poly(catalog::noncompact_blowdown(0.0)) == RationalPoly({R(8), R(4), R(-6)}));
  CHECK(std::abs(bd.kappa1 - 3.0 / (1.0 + std::sqrt(13.0))) < 1e-14);
}

TEST_CASE("symmetry identity") {
  const auto cfg = catalog::compact_mixed_quadric();
  for (double k : {0.0, 0.3, -0.7}) {
    const auto [lhs, rhs] = symmetry_identity_check(cfg, k);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
  }
  // kappa1 = 0: sign (-1)^{1 + 4} = -1.
  const auto [l0, r0] = symmetry_identity_check(cfg, 0.0);
  CHECK(l0 == -7.8);
  CHECK(r0 == -7.8);
  const auto bp = symmetry_identity_check(catalog::compact_blowdown_pair(), 0.45);
  CHECK(std::abs(bp.first - bp.second) <= 1e-10 * std::abs(bp.second));
  CHECK_THROWS_AS(symmetry_identity_check(uneven_ends(), 0.3), std::invalid_argument);
}

TEST_CASE("wrong class is rejected") {
  CHECK_THROWS_AS(futaki_integral(catalog::noncompact_line_bundle(0.7), 0.0), AdmissibilityError);
  CHECK_THROWS_AS(find_kappa1_noncompact(catalog::compact_mixed_quadric()), AdmissibilityError);
  CHECK_THROWS_AS(find_kappa1_compact(catalog::expanding_sample(-1.0)), AdmissibilityError);
}
