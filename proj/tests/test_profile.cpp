#include "doctest.h"
#include "support.hpp"

#include "ksol/catalog.hpp"
#include "ksol/errors.hpp"
#include "ksol/profile.hpp"

#include <random>

using namespace ksol;
using ksol::test::quad;

namespace {

Rational R(long n, long d = 1) { return Rational(n) / Rational(d); }

// Root of 8 + 4y - 6y^2 (noncompact_blowdown), kappa1 = 1/y*.
const double kBlowdownKappa = 3.0 / (1.0 + std::sqrt(13.0));

std::vector<Profile> admissible_profiles() {
  std::vector<Profile> out;
  out.push_back(Profile::build(catalog::flat_steady(0.0)));
  out.push_back(Profile::build(catalog::flat_steady(-1.0)));
  out.push_back(Profile::build(catalog::steady_family(1, -1.0, R(1))));
  out.push_back(Profile::build(catalog::steady_family(3, -0.25, R(1, 2))));
  out.push_back(Profile::build(catalog::expanding_sample(-1.0)));
  out.push_back(Profile::build(catalog::expanding_sample(0.0)));
  out.push_back(Profile::build(catalog::noncompact_line_bundle(1.0 / std::sqrt(2.0))));
  out.push_back(Profile::build(catalog::noncompact_blowdown(kBlowdownKappa)));
  out.push_back(Profile::build(catalog::compact_mixed_quadric()));
  out.push_back(Profile::build(with_kappa1(catalog::compact_blowdown_pair(), 0.4)));
  return out;
}

// alpha from its defining integral, by quadrature only. On a calibrated noncompact shrinker the
// integral over [0, s] cancels to the negative tail over [s, inf), which is the well-conditioned form.
double alpha_by_quadrature(const Profile& p, double s) {
  const auto& cfg = p.config();
  const double k = cfg.kappa1;
  auto f = [&](double x) { return std::exp(k * (s - x)) * (cfg.eps() * x + cfg.e_star()) * p.v(x); };
  if (!p.compact() && k > 0.0 && p.exp_mode_dropped() && s > 1.0) return -quad(f, s, s + 80.0 / k) / p.v(s);
  return quad(f, 0.0, s) / p.v(s);
}

}  // namespace

TEST_CASE("flat and cigar closed forms") {
  const auto flat = Profile::build(catalog::flat_steady(0.0));
  const auto cigar = Profile::build(catalog::flat_steady(-1.0));
  for (int i = 1; i <= 50; ++i) {
    const double s = 0.4 * i;
    CHECK(std::abs(flat.alpha(s) - 2.0 * s) <= 1e-12 * std::max(1.0, 2.0 * s));
    CHECK(std::abs(cigar.alpha(s) + 2.0 * std::expm1(-s)) <= 1e-12);
    CHECK(flat.sample(s).d2alpha == 0.0);
  }
  const auto c0 = cigar.sample(0.0);
  CHECK(c0.alpha == 0.0);
  CHECK(c0.dalpha == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("collapse normalization alpha(0) = 0, alpha'(0) = 2") {
  for (const auto& p : admissible_profiles()) {
    const auto s0 = p.sample(0.0);
    CHECK(std::abs(s0.alpha) < 1e-10);
    CHECK(std::abs(s0.dalpha - 2.0) < 1e-10);
  }
}

TEST_CASE("alpha equation holds at random interior points") {
  std::mt19937 rng(3);
  for (const auto& p : admissible_profiles()) {
    const double hi = p.compact() ? p.s_hi() : 50.0;
    std::uniform_real_distribution<double> sd(1e-4 * hi, (1.0 - 1e-4) * hi);
    const auto& cfg = p.config();
    for (int t = 0; t < 100; ++t) {
      const auto x = p.sample(sd(rng));
      const double res = x.dalpha + x.alpha * (x.dlogv - cfg.kappa1) - cfg.eps() * x.s - cfg.e_star();
      CHECK(std::abs(res) < 1e-10);
    }
  }
}

TEST_CASE("alpha agrees with quadrature of its integral") {
  for (const auto& p : admissible_profiles()) {
    const double hi = p.compact() ? p.s_hi() : 30.0;
    for (int i = 1; i <= 20; ++i) {
      const double s = hi * i / 21.0;
      const double want = alpha_by_quadrature(p, s);
      CHECK_MESSAGE(std::abs(p.alpha(s) - want) <= 1e-9 * std::abs(want), "s=" << s);
    }
  }
}

TEST_CASE("derivatives agree with finite differences") {
  for (const auto& p : admissible_profiles()) {
    const double hi = p.compact() ? p.s_hi() : 20.0;
    for (int i = 1; i <= 9; ++i) {
      const double s = hi * i / 10.0, h = 1e-4;
      const auto x = p.sample(s);
      const double d1 = (p.alpha(s + h) - p.alpha(s - h)) / (2 * h);
      const double d2 = (p.alpha(s + h) - 2 * p.alpha(s) + p.alpha(s - h)) / (h * h);
      CHECK(std::abs(x.dalpha - d1) < 1e-7 * std::max(1.0, std::abs(d1)));
      CHECK(std::abs(x.d2alpha - d2) < 1e-4 * std::max(1.0, std::abs(d2)));
    }
  }
}

TEST_CASE("series at the collapsed ends") {
  const auto p = Profile::build(catalog::noncompact_blowdown(kBlowdownKappa));
  const auto c = p.alpha_series(CollapseEnd::Zero);
  CHECK(c[0] == 0.0);
  CHECK(c[1] == doctest::Approx(2.0).epsilon(1e-14));  // E*/(n1+1) = 4/2
  // Series and closed form meet at the switch radius.
  const double s = Profile::kSeriesRadius * 1.5;
  double ser = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) ser = ser * s + c[j];
  CHECK(std::abs(ser - p.alpha(s)) < 1e-13);

  CHECK_THROWS(Profile::build(catalog::noncompact_line_bundle(0.7)).alpha_series(CollapseEnd::Zero));
  CHECK_THROWS(Profile::build(catalog::flat_steady(-1.0)).alpha_series(CollapseEnd::Zero));
  // n1 = 1 steady-type profile: leading coefficient 2 with E* = 4.
  const auto st = Profile::build(with_kappa1(catalog::compact_blowdown_pair(), 0.4));
  CHECK(st.alpha_series(CollapseEnd::Zero)[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("far-end mode stays when kappa1 is off the calibration") {
  const auto p = Profile::build(catalog::noncompact_line_bundle(1.2 / std::sqrt(2.0)));
  CHECK_FALSE(p.exp_mode_dropped());
  const double s = 1e3;
  CHECK(p.alpha(s) > 10.0 * s / p.config().kappa1);
  CHECK(Profile::build(catalog::noncompact_line_bundle(1.0 / std::sqrt(2.0))).exp_mode_dropped());
}

TEST_CASE("asymptotic regimes") {
  // Steady kappa1 < 0: alpha bounded.
  const auto st = Profile::build(catalog::steady_family(1, -1.0, R(1)));
  CHECK(std::abs(st.alpha(1e4) / st.alpha(1e3) - 1.0) < 0.02);
  CHECK(st.alpha(1e4) == doctest::Approx(2.0).epsilon(0.02));  // E*/(-kappa1)
  // Expanding kappa1 < 0: alpha/s -> -1/kappa1.
  const auto ex = Profile::build(catalog::expanding_sample(-1.0));
  for (double s : {1e3, 1e4}) CHECK(std::abs(ex.alpha(s) / s - 1.0) < 0.02);
  // Noncompact shrinker at calibration: alpha/s -> 1/kappa1.
  const double k = 1.0 / std::sqrt(2.0);
  const auto nc = Profile::build(catalog::noncompact_line_bundle(k));
  for (double s : {1e3, 1e4}) CHECK(std::abs(nc.alpha(s) * k / s - 1.0) < 0.02);
  const auto nb = Profile::build(catalog::noncompact_blowdown(kBlowdownKappa));
  for (double s : {1e3, 1e4}) CHECK(std::abs(nb.alpha(s) * kBlowdownKappa / s - 1.0) < 0.02);
}

TEST_CASE("domain errors") {
  const auto p = Profile::build(catalog::compact_mixed_quadric());
  CHECK_THROWS(p.alpha(-0.1));
  CHECK_THROWS(p.alpha(4.5));
  CHECK_THROWS_AS(Profile::build(derive_config(Rational(-1), {{0, 1, -1}, {1, 1, -1}}, {}, 0.5)), AdmissibilityError);
}
