#include "ksol/residuals.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ksol {

namespace {

void track_max(double& m, double x) { m = std::max(m, std::abs(x)); }

}  // namespace

double ResidualSummary::max_equation() const { return std::max({max_t, max_fibre, max_base}); }

std::vector<double> default_grid(const Profile& p, int n, double s_max) {
  if (n < 2) throw std::invalid_argument("default_grid: need at least 2 points");
  const double lo = 1e-3;
  const double hi = p.compact() ? 0.999 * p.s_hi() : s_max;
  if (!(hi > lo)) throw std::invalid_argument("default_grid: empty range");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = std::exp(a + (b - a) * k / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

PointResiduals residuals_at(const SolitonConfig& cfg, const ProfileSample& x) {
  const double eps = cfg.eps();
  const double a = x.alpha, da = x.dalpha, d2a = x.d2alpha;
  const double dphi = x.dphi, d2phi = 0.0, d2beta = 0.0;
  PointResiduals out;
  double sum_t = 0.0, sum_f = 0.0;
  for (std::size_t i = 0; i < cfg.r(); ++i) {
    const double n = cfg.factors[i].n, q = to_double(cfg.factors[i].q);
    const double b = x.beta[i], lb = x.dbeta[i] / b;
    sum_t += n * (d2beta / b - 0.5 * lb * lb);
    sum_f += n * q * q / (b * b);
  }
  out.t = 0.5 * d2a + 0.5 * da * x.dlogv + a * sum_t - a * d2phi - 0.5 * da * dphi - 0.5 * eps;
  out.fibre = 0.5 * d2a + 0.5 * da * x.dlogv - 0.5 * da * dphi - 0.5 * a * sum_f - 0.5 * eps;
  out.base.resize(cfg.r());
  for (std::size_t i = 0; i < cfg.r(); ++i) {
    const double p = to_double(cfg.factors[i].p), q = to_double(cfg.factors[i].q);
    const double b = x.beta[i], lb = x.dbeta[i] / b;
    out.base[i] = 0.5 * da * lb + 0.5 * a * (d2beta / b - lb * lb) + 0.5 * a * lb * x.dlogv - 0.5 * a * lb * dphi -
                  p / b + q * q * a / (2.0 * b * b) - 0.5 * eps;
  }
  return out;
}

double first_integral_at(const SolitonConfig& cfg, const ProfileSample& x) {
  const double d2phi = 0.0;
  return x.alpha * d2phi + x.dalpha * x.dphi + x.alpha * x.dphi * x.dlogv - x.alpha * x.dphi * x.dphi -
         cfg.eps() * x.phi;
}

double first_integral(const Profile& p, double s) { return first_integral_at(p.config(), p.sample(s)); }

double mu_value(double beta, double dbeta, double d2beta, double q) {
  const double lb = dbeta / beta;
  return d2beta / beta - 0.5 * lb * lb + 0.5 * q * q / (beta * beta);
}

std::vector<double> mu_values(const Profile& p, double s) {
  const ProfileSample x = p.sample(s);
  std::vector<double> out(x.beta.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = mu_value(x.beta[i], x.dbeta[i], 0.0, static_cast<double>(p.config().factors[i].q));
  return out;
}

double bianchi_quantity_at(const SolitonConfig& cfg, const ProfileSample& x) {
  const double a = x.alpha, da = x.dalpha, d2a = x.d2alpha;
  // tr L = sqrt(alpha) T
  const double T = da / (2.0 * a) + x.dlogv;
  const double dT = (d2a * a - da * da) / (2.0 * a * a) + x.d2logv;
  const double tr_ldot = 0.5 * da * T + a * dT;
  double sq = 0.0;
  for (std::size_t i = 0; i < cfg.r(); ++i) {
    const double lb = x.dbeta[i] / x.beta[i];
    sq += cfg.factors[i].n * lb * lb;
  }
  const double ha = da / (2.0 * a);
  const double tr_l2 = a * (ha * ha + 0.5 * sq);
  const double udd = 0.5 * da * x.dphi;
  return a * x.v * x.v * (-tr_ldot - tr_l2 + udd + 0.5 * cfg.eps());
}

double bianchi_quantity(const Profile& p, double s) { return bianchi_quantity_at(p.config(), p.sample(s)); }

ResidualGrid soliton_residuals(const Profile& p, const std::vector<double>& s_values) {
  const auto& cfg = p.config();
  ResidualGrid g;
  g.s_values = s_values;
  const std::size_t m = s_values.size(), r = cfg.r();
  g.r_t.resize(m);
  g.r_fibre.resize(m);
  g.c_values.resize(m);
  g.bianchi.resize(m);
  g.r_base.assign(r, std::vector<double>(m));
  g.mu.assign(r, std::vector<double>(m));
  for (std::size_t k = 0; k < m; ++k) {
    const ProfileSample x = p.sample(s_values[k]);
    const PointResiduals pr = residuals_at(cfg, x);
    g.r_t[k] = pr.t;
    g.r_fibre[k] = pr.fibre;
    for (std::size_t i = 0; i < r; ++i) {
      g.r_base[i][k] = pr.base[i];
      g.mu[i][k] = mu_value(x.beta[i], x.dbeta[i], 0.0, to_double(cfg.factors[i].q));
    }
    g.c_values[k] = first_integral_at(cfg, x);
    g.bianchi[k] = bianchi_quantity_at(cfg, x);
  }
  return g;
}

ResidualSummary summarize(const ResidualGrid& g) {
  ResidualSummary s;
  if (g.s_values.empty()) return s;
  for (double x : g.r_t) track_max(s.max_t, x);
  for (double x : g.r_fibre) track_max(s.max_fibre, x);
  for (const auto& row : g.r_base)
    for (double x : row) track_max(s.max_base, x);
  for (const auto& row : g.mu)
    for (double x : row) track_max(s.max_mu, x);
  const auto [cmin, cmax] = std::minmax_element(g.c_values.begin(), g.c_values.end());
  s.c_min = *cmin;
  s.c_max = *cmax;
  const auto [bmin, bmax] = std::minmax_element(g.bianchi.begin(), g.bianchi.end());
  s.bianchi_min = *bmin;
  s.bianchi_max = *bmax;
  return s;
}

double TResiduals::max_abs() const {
  double m = 0.0;
  for (double x : r_nn) track_max(m, x);
  for (double x : r_uu) track_max(m, x);
  for (const auto& row : r_xx)
    for (double x : row) track_max(m, x);
  return m;
}

TResiduals t_coordinate_residuals(const std::vector<FanoFactor>& factors, double eps, const TSamples& x) {
  const std::size_t n = x.f.size(), r = factors.size();
  if (!(x.h > 0.0)) throw std::invalid_argument("t_coordinate_residuals: grid spacing must be positive");
  if (n < 5) throw std::invalid_argument("t_coordinate_residuals: need at least 5 samples");
  if (x.u.size() != n || x.g.size() != r) throw std::invalid_argument("t_coordinate_residuals: shape mismatch");
  for (const auto& gi : x.g)
    if (gi.size() != n) throw std::invalid_argument("t_coordinate_residuals: shape mismatch");

  const double h = x.h;
  auto d1 = [h](const std::vector<double>& y, std::size_t k) {
    return (-y[k + 2] + 8.0 * y[k + 1] - 8.0 * y[k - 1] + y[k - 2]) / (12.0 * h);
  };
  auto d2 = [h](const std::vector<double>& y, std::size_t k) {
    return (-y[k + 2] + 16.0 * y[k + 1] - 30.0 * y[k] + 16.0 * y[k - 1] - y[k - 2]) / (12.0 * h * h);
  };

  TResiduals out;
  out.r_xx.assign(r, {});
  std::vector<double> g(r), dg(r), ddg(r);
  for (std::size_t k = 2; k + 2 < n; ++k) {
    const double f = x.f[k], df = d1(x.f, k), ddf = d2(x.f, k);
    const double du = d1(x.u, k), ddu = d2(x.u, k);
    double sum_gdd = 0.0, sum_fg = 0.0, sum_q = 0.0, sum_dg = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      g[i] = x.g[i][k];
      dg[i] = d1(x.g[i], k);
      ddg[i] = d2(x.g[i], k);
      const double n_i = factors[i].n, q = to_double(factors[i].q);
      sum_gdd += 2.0 * n_i * ddg[i] / g[i];
      sum_fg += 2.0 * n_i * df * dg[i] / (f * g[i]);
      sum_q += 0.5 * n_i * q * q * f * f / std::pow(g[i], 4);
      sum_dg += 2.0 * n_i * dg[i] / g[i];
    }
    out.t.push_back(x.t0 + static_cast<double>(k) * h);
    out.r_nn.push_back(ddf / f + sum_gdd - ddu - 0.5 * eps);
    out.r_uu.push_back(ddf / f + sum_fg - du * df / f - sum_q - 0.5 * eps);
    for (std::size_t i = 0; i < r; ++i) {
      const double p = to_double(factors[i].p), q = to_double(factors[i].q);
      const double lg = dg[i] / g[i];
      const double res = ddg[i] / g[i] - lg * lg + df * dg[i] / (f * g[i]) + lg * sum_dg - du * lg - p / (g[i] * g[i]) +
                         q * q * f * f / (2.0 * std::pow(g[i], 4)) - 0.5 * eps;
      out.r_xx[i].push_back(res);
    }
  }
  return out;
}

namespace {

// State layout: f, f', g_1..g_r, g_1'..g_r', u, u', u''.
struct FreeSystem {
  std::vector<FanoFactor> factors;
  double eps;

  struct Derived {
    double ddf, tr_l, tr_ldot, tr_l2;
    std::vector<double> ddg;
  };

  Derived derive(const std::vector<double>& y) const {
    const std::size_t r = factors.size();
    const double f = y[0], df = y[1], du = y[2 + 2 * r + 1];
    Derived d;
    d.ddg.resize(r);
    double sum_fg = 0.0, sum_q = 0.0, sum_dg = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      const double g = y[2 + i], dg = y[2 + r + i], n = factors[i].n, q = to_double(factors[i].q);
      sum_fg += 2.0 * n * df * dg / (f * g);
      sum_q += 0.5 * n * q * q * f * f / std::pow(g, 4);
      sum_dg += 2.0 * n * dg / g;
      sq += 2.0 * n * (dg / g) * (dg / g);
    }
    d.ddf = f * (0.5 * eps - sum_fg + du * df / f + sum_q);
    double sum_ddg = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
      const double g = y[2 + i], dg = y[2 + r + i], n = factors[i].n;
      const double p = to_double(factors[i].p), q = to_double(factors[i].q);
      const double lg = dg / g;
      d.ddg[i] = g * (0.5 * eps + lg * lg - df * dg / (f * g) - lg * sum_dg + du * lg + p / (g * g) -
                      q * q * f * f / (2.0 * std::pow(g, 4)));
      sum_ddg += 2.0 * n * (d.ddg[i] / g - lg * lg);
    }
    const double lf = df / f;
    d.tr_l = lf + sum_dg;
    d.tr_ldot = d.ddf / f - lf * lf + sum_ddg;
    d.tr_l2 = lf * lf + sq;
    return d;
  }

  void operator()(const std::vector<double>& y, std::vector<double>& dy, double) const {
    const std::size_t r = factors.size();
    const Derived d = derive(y);
    dy[0] = y[1];
    dy[1] = d.ddf;
    for (std::size_t i = 0; i < r; ++i) {
      dy[2 + i] = y[2 + r + i];
      dy[2 + r + i] = d.ddg[i];
    }
    const std::size_t iu = 2 + 2 * r;
    const double du = y[iu + 1], ddu = y[iu + 2];
    dy[iu] = du;
    dy[iu + 1] = ddu;
    dy[iu + 2] = -d.tr_l * ddu - d.tr_ldot * du + 2.0 * ddu * du + eps * du;
  }

  double q_of(const std::vector<double>& y) const {
    const std::size_t r = factors.size();
    const Derived d = derive(y);
    double vol = y[0];
    for (std::size_t i = 0; i < r; ++i) vol *= std::pow(y[2 + i], 2 * factors[i].n);
    return vol * vol * (-d.tr_ldot - d.tr_l2 + y[2 + 2 * r + 2] + 0.5 * eps);
  }
};

}  // namespace

ConservationTrace integrate_free_system(const std::vector<FanoFactor>& factors, double eps, const FreeState& start,
                                        double t0, double t1, int n_out) {
  namespace ode = boost::numeric::odeint;
  const std::size_t r = factors.size();
  if (start.g.size() != r || start.dg.size() != r) throw std::invalid_argument("integrate_free_system: shape mismatch");
  if (n_out < 2 || !(t1 > t0)) throw std::invalid_argument("integrate_free_system: bad output grid");
  const FreeSystem sys{factors, eps};
  std::vector<double> y(3 + 2 * r + 2);
  y[0] = start.f;
  y[1] = start.df;
  for (std::size_t i = 0; i < r; ++i) {
    y[2 + i] = start.g[i];
    y[2 + r + i] = start.dg[i];
  }
  y[2 + 2 * r] = start.u;
  y[2 + 2 * r + 1] = start.du;
  y[2 + 2 * r + 2] = start.d2u;

  std::vector<double> times(static_cast<std::size_t>(n_out));
  for (int k = 0; k < n_out; ++k) times[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * k / (n_out - 1);

  ConservationTrace out;
  auto observe = [&](const std::vector<double>& state, double t) {
    const double q = sys.q_of(state), u = state[2 + 2 * r];
    out.t.push_back(t);
    out.q.push_back(q);
    out.u.push_back(u);
    out.scaled.push_back(q * std::exp(-2.0 * u));
  };
  auto stepper = ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_fehlberg78<std::vector<double>>());
  ode::integrate_times(stepper, sys, y, times.begin(), times.end(), (t1 - t0) / 1000.0, observe);
  return out;
}

}  // namespace ksol
