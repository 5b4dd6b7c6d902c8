#include "doctest.h"
#include "support.hpp"

#include "ksol/catalog.hpp"
#include "ksol/errors.hpp"
#include "ksol/futaki.hpp"
#include "ksol/geometry.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

using namespace ksol;

namespace {

Rational R(long n, long d = 1) { return Rational(n) / Rational(d); }

Profile calibrated_compact() {
  const auto cfg = catalog::compact_mixed_quadric();
  return Profile::build(with_kappa1(cfg, find_kappa1_compact(cfg).kappa1));
}

Profile calibrated_line_bundle() {
  const auto cfg = catalog::noncompact_line_bundle(0.0);
  return Profile::build(with_kappa1(cfg, find_kappa1_noncompact(cfg).kappa1));
}

double observed_order(double e1, double e2) { return std::log2(e1 / e2); }

}  // namespace

TEST_CASE("t(s) closed forms and oracles") {
  const auto flat = Profile::build(catalog::flat_steady(0.0));
  for (double s : {1e-6, 0.01, 0.5, 3.0, 200.0, 1e5}) CHECK(std::abs(t_of_s(flat, s) - std::sqrt(2.0 * s)) <= 1e-12 * std::sqrt(2.0 * s));

  // Independent oracle: tanh-sinh on the unsubstituted integrand, which handles the 1/sqrt endpoint.
  const auto cigar = Profile::build(catalog::flat_steady(-1.0));
  boost::math::quadrature::tanh_sinh<double> ts;
  const double want = ts.integrate([](double x) { return 1.0 / std::sqrt(-2.0 * std::expm1(-x)); }, 0.0, 0.5);
  CHECK(std::abs(t_of_s(cigar, 0.5) - want) < 1e-12);

  const auto c = calibrated_compact();
  const double total = t_of_s(c, c.s_hi());
  CHECK(std::isfinite(total));
  CHECK(std::abs(t_of_s(c, c.s_hi(), 1e-13) - total) < 1e-8 * total);
}

TEST_CASE("s -> t -> s round trip and dt/ds") {
  for (const auto& p : {calibrated_compact(), calibrated_line_bundle(), Profile::build(catalog::expanding_sample(-1.0))}) {
    const double hi = p.compact() ? p.s_hi() : 40.0;
    for (int k = 1; k <= 50; ++k) {
      const double s = hi * k / 51.0;
      const double t = t_of_s(p, s);
      CHECK(std::abs(s_of_t(p, t) - s) < 1e-9 * std::max(1.0, s));
      const double h = 1e-4;
      const double d = (t_of_s(p, s + h) - t_of_s(p, s - h)) / (2 * h);
      CHECK(std::abs(d - 1.0 / std::sqrt(p.alpha(s))) < 1e-6);
    }
  }
  const auto c = calibrated_compact();
  CHECK_THROWS_AS(s_of_t(c, 1.01 * t_of_s(c, c.s_hi())), std::out_of_range);
}

TEST_CASE("metric functions") {
  const auto flat = Profile::build(catalog::flat_steady(0.0));
  const auto m = metric_functions(flat, {0.0, 0.5, 1.0, 2.0, 10.0});
  for (std::size_t k = 0; k < m.t_grid.size(); ++k) CHECK(std::abs(m.f[k] - m.t_grid[k]) < 1e-10);

  const auto cigar = Profile::build(catalog::flat_steady(-1.0));
  const auto mc = metric_functions(cigar, {30.0, 60.0});
  CHECK(std::abs(mc.f.back() - std::sqrt(2.0)) < 1e-12);
  CHECK(mc.u.back() == doctest::Approx(-mc.s_of_t.back()));

  // alpha ~ -s/kappa1 and t ~ 2 sqrt(-kappa1 s) give f/t -> -1/(2 kappa1).
  for (double k : {-1.0, -0.5}) {
    const auto ex = Profile::build(catalog::expanding_sample(k));
    const auto me = metric_functions(ex, {1e3});
    CHECK(std::abs(me.f[0] / 1e3 * (-2.0 * k) - 1.0) < 0.02);
  }
}

TEST_CASE("t-coordinate residuals of reconstructed metrics converge at fourth order") {
  for (const auto& p : {Profile::build(catalog::flat_steady(-1.0)), Profile::build(catalog::steady_family(1, -1.0, R(1))),
                        calibrated_line_bundle()}) {
    std::vector<double> errs;
    for (int n : {41, 81, 161}) {
      std::vector<double> grid;
      for (int k = 0; k < n; ++k) grid.push_back(0.5 + 2.5 * k / (n - 1));
      const auto x = to_t_samples(metric_functions(p, grid));
      errs.push_back(t_coordinate_residuals(p.config().factors, p.config().eps(), x).max_abs());
    }
    CHECK(errs[2] < 1e-6);
    CHECK(observed_order(errs[0], errs[1]) >= 3.5);
    CHECK(observed_order(errs[1], errs[2]) >= 3.5);
  }
}

TEST_CASE("completeness classes") {
  const auto cigar = completeness_report(Profile::build(catalog::flat_steady(-1.0)));
  CHECK(cigar.cls == Completeness::CigarParaboloid);
  CHECK(cigar.length_infinite);
  const auto st = completeness_report(Profile::build(catalog::steady_family(2, -1.0, R(1))));
  CHECK(st.cls == Completeness::CigarParaboloid);
  CHECK(std::abs(st.slope_estimates.at("f_slope")) < 0.05);
  CHECK(std::abs(st.slope_estimates.at("g_slope") - 0.5) < 0.05);

  const auto lb = completeness_report(calibrated_line_bundle());
  CHECK(lb.cls == Completeness::AsymptoticallyConical);
  CHECK(std::abs(lb.slope_estimates.at("f_slope") - 1.0) < 0.05);
  CHECK(std::abs(lb.slope_estimates.at("g_slope") - 1.0) < 0.05);
  CHECK(completeness_report(Profile::build(catalog::expanding_sample(-1.0))).cls == Completeness::AsymptoticallyConical);
  CHECK(completeness_report(Profile::build(catalog::expanding_sample(0.0))).cls == Completeness::Hyperbolic);
  CHECK(completeness_report(Profile::build(catalog::flat_steady(0.0))).cls == Completeness::AsymptoticallyConical);

  const auto cc = completeness_report(calibrated_compact());
  CHECK(cc.cls == Completeness::Compact);
  CHECK(std::isfinite(cc.geodesic_length));

  const auto bad = completeness_report(Profile::build(catalog::steady_family(1, 1.0, R(1))));
  CHECK(bad.cls == Completeness::Incomplete);
  CHECK_FALSE(bad.length_infinite);
  CHECK(std::isfinite(bad.geodesic_length));
  CHECK(completeness_report(Profile::build(catalog::flat_steady(1.0))).cls == Completeness::Incomplete);
  CHECK(completeness_report(Profile::build(with_kappa1(catalog::compact_mixed_quadric(), 0.5))).cls ==
        Completeness::Incomplete);
  const auto under = completeness_report(Profile::build(catalog::noncompact_line_bundle(0.6)));
  CHECK(under.cls == Completeness::Incomplete);
  CHECK(std::isfinite(under.geodesic_length));
  CHECK(completeness_report(Profile::build(catalog::noncompact_line_bundle(0.8))).cls == Completeness::Incomplete);
}

TEST_CASE("hypersurface volume growth on steady cigar-type ends") {
  // vol = f prod g_i^{2 n_i} = sqrt(alpha) v grows like t^{sum n}.
  for (int n : {1, 2, 3}) {
    const auto p = Profile::build(catalog::steady_family(n, -1.0, R(1)));
    const double t = 1e3;
    const auto x = p.sample(s_of_t(p, t));
    const double slope = t * std::sqrt(x.alpha) * (x.dalpha / (2.0 * x.alpha) + x.dlogv);
    CHECK(std::abs(slope / n - 1.0) < 0.05);
  }
}

TEST_CASE("flow map") {
  const auto lb = calibrated_line_bundle();
  const auto fm = FlowMap::build(lb);
  for (double t : {0.3, 1.0, 4.0}) CHECK(std::abs(fm.xi(0.0, t) - t) < 1e-9 * t);
  for (double s : {1e-6, 0.3, 2.0, 500.0}) CHECK(std::abs(fm.F_inverse(fm.F(s)) - s) < 1e-10 * s);
  CHECK_THROWS_AS(fm.xi(1.0, 1.0), std::out_of_range);

  // Xi sqrt(1 - tau) settles as tau -> 1 on the conical end.
  const double t = 1.5;
  const double a = fm.xi(1.0 - 1e-3, t) * std::sqrt(1e-3);
  const double b = fm.xi(1.0 - 1e-4, t) * std::sqrt(1e-4);
  const double c = fm.xi(1.0 - 1e-5, t) * std::sqrt(1e-5);
  CHECK(std::abs(c / b - 1.0) < 0.02);
  CHECK(std::abs(c / b - 1.0) < std::abs(b / a - 1.0));

  CHECK(flow_trajectory(Profile::build(catalog::flat_steady(0.0)), 3.0, 2.0) == 2.0);
  CHECK_THROWS_AS(FlowMap::build(Profile::build(catalog::steady_family(1, 1.0, R(1)))), AdmissibilityError);
}

TEST_CASE("flow ODE dXi/dtau = u'(Xi)/(1 + eps tau)") {
  std::vector<Profile> ps{Profile::build(catalog::flat_steady(-1.0)), Profile::build(catalog::expanding_sample(-1.0)),
                          calibrated_compact(), calibrated_line_bundle()};
  for (const auto& p : ps) {
    const auto fm = FlowMap::build(p);
    const double eps = p.config().eps(), k = p.config().kappa1;
    const double t_hi = p.compact() ? 0.8 * t_of_s(p, p.s_hi()) : 3.0;
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double t = t_hi * (0.2 + 0.2 * i);
      for (double tau : {-0.3, 0.0, 0.3}) {
        const double h = 1e-4;
        const double d = (fm.xi(tau + h, t) - fm.xi(tau - h, t)) / (2 * h);
        const double x = fm.xi(tau, t);
        const double rhs = k * std::sqrt(p.alpha(s_of_t(p, x))) / (1.0 + eps * tau);
        worst = std::max(worst, std::abs(d - rhs));
      }
    }
    CHECK(worst < 1e-6);
  }
}
