#include "ksol/profile.hpp"

#include "ksol/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace ksol {

namespace {

// Taylor coefficients of the polynomial at x0: out[k] = P^{(k)}(x0) / k!.
std::vector<double> taylor_at(std::vector<double> a, double x0) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t i = n - 1; i-- > k;) a[i] += x0 * a[i + 1];
  return a;
}

double horner(const std::vector<double>& a, double x) {
  double acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

Profile Profile::build(const SolitonConfig& cfg) {
  const ValidationReport rep = validate(cfg);
  if (!rep.structurally_admissible()) {
    std::string msg = "inadmissible configuration:";
    for (const auto& v : rep.violations)
      if (v.kind == ViolationKind::Structural) msg += " [" + v.name + "]";
    throw AdmissibilityError(msg);
  }
  return assemble(cfg);
}

Profile Profile::build_detuned(const SolitonConfig& cfg, const Rational& delta_e_star) {
  (void)build(cfg);
  SolitonConfig shifted = cfg;
  shifted.E_star += delta_e_star;
  return assemble(shifted);
}

Profile Profile::assemble(const SolitonConfig& cfg) {
  Profile p;
  p.cfg_ = cfg;
  p.eps_ = cfg.eps();
  p.e_star_ = cfg.e_star();
  p.kappa_ = cfg.kappa1;
  p.s_star_ = cfg.compact() ? cfg.s_star_d() : 0.0;

  RationalPoly v = RationalPoly::constant(Rational(1));
  for (std::size_t i = 0; i < cfg.r(); ++i) {
    const auto& f = cfg.factors[i];
    p.n_.push_back(f.n);
    p.q_.push_back(to_double(f.q));
    p.sigma_.push_back(cfg.sigma(i));
    if (f.n > 0) v = poly_mul(v, (RationalPoly::linear(cfg.sigmas[i]) * Rational(-f.q)).pow(f.n));
  }
  p.v_poly_ = v;
  p.psi_poly_ = poly_mul(RationalPoly({cfg.E_star, cfg.epsilon}), v);
  p.psi_ = p.psi_poly_.to_doubles();
  p.dv_ = v.derivative().to_doubles();
  p.d2v_ = v.derivative().derivative().to_doubles();

  const double k = p.kappa_;
  if (cfg.compact()) {
    const Scaled total = exp_poly_integral_scaled(p.psi_poly_, k, 0.0, p.s_star_);
    const ScaledMoments m = exp_moments_scaled(k, p.s_star_, p.psi_poly_.degree());
    double scale = 0.0;
    for (std::size_t j = 0; j < p.psi_.size(); ++j) scale += std::abs(p.psi_[j]) * m.mant[j];
    p.mode_raw_ = total.mant;
    p.mode_log_ = total.log_scale;
    p.mode_scale_ = scale;
    p.mode_dropped_ = std::abs(total.mant) <= kModeSnap * scale;
  } else if (k > 0.0) {
    double sum = 0.0, scale = 0.0, w = 1.0 / k;
    for (std::size_t j = 0; j < p.psi_.size(); ++j) {
      if (j > 0) w *= static_cast<double>(j) / k;
      sum += p.psi_[j] * w;
      scale += std::abs(p.psi_[j]) * w;
    }
    p.mode_raw_ = sum;
    p.mode_scale_ = scale;
    p.mode_dropped_ = std::abs(sum) <= kModeSnap * scale;
  }

  if (cfg.n_first() > 0) p.series_zero_ = p.alpha_series(CollapseEnd::Zero);
  if (cfg.compact() && cfg.n_last() > 0 && p.mode_dropped_) p.series_star_ = p.alpha_series(CollapseEnd::Star);
  return p;
}

void Profile::check_domain(double s) const {
  if (!(s >= 0.0)) throw std::out_of_range("s must be >= 0");
  if (compact() && s > s_star_) throw std::out_of_range("s beyond s*");
}

double Profile::beta(std::size_t i, double s) const { return -q_.at(i) * (s + sigma_.at(i)); }

double Profile::v(double s) const {
  double out = 1.0;
  for (std::size_t i = 0; i < n_.size(); ++i)
    if (n_[i] > 0) out *= std::pow(beta(i, s), n_[i]);
  return out;
}

std::vector<double> Profile::alpha_series(CollapseEnd end, int terms) const {
  const bool at_zero = end == CollapseEnd::Zero;
  if (!at_zero && !compact()) throw std::invalid_argument("alpha_series: no finite far end");
  const int ne = at_zero ? cfg_.n_first() : cfg_.n_last();
  if (ne == 0) throw std::invalid_argument("alpha_series: v nonvanishing at this end");
  if (!at_zero && !mode_dropped_)
    throw NumericError("alpha_series: alpha is singular at s* (far-end mode not calibrated away)");
  if (terms < 3) terms = 3;

  // With the far-end mode zero, alpha(e+h) v(e+h) = int_0^h e^{kappa (h-w)} Psi(e+w) dw.
  const Rational e = at_zero ? Rational(0) : cfg_.s_star;
  const std::vector<double> psi = psi_poly_.shifted(e).to_doubles();
  const std::vector<double> vv = v_poly_.shifted(e).to_doubles();
  const double k = kappa_;
  auto num = [&](int p) {
    // sum_{k+m+1=p} psi_k k! kappa^m / p!
    double sum = 0.0;
    for (int j = 0; j < p && j < static_cast<int>(psi.size()); ++j) {
      double w = 1.0;
      for (int t = j + 1; t <= p; ++t) w /= t;
      sum += psi[static_cast<std::size_t>(j)] * w * std::pow(k, p - 1 - j);
    }
    return sum;
  };
  auto vcoef = [&](int i) { return i < static_cast<int>(vv.size()) ? vv[static_cast<std::size_t>(i)] : 0.0; };

  const int m = terms - 1;
  std::vector<double> nt(static_cast<std::size_t>(m)), vt(static_cast<std::size_t>(m)), c(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    nt[static_cast<std::size_t>(i)] = num(i + ne + 1);
    vt[static_cast<std::size_t>(i)] = vcoef(i + ne);
  }
  for (int i = 0; i < m; ++i) {
    double acc = nt[static_cast<std::size_t>(i)];
    for (int j = 1; j <= i; ++j) acc -= vt[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(i - j)];
    c[static_cast<std::size_t>(i)] = acc / vt[0];
  }
  std::vector<double> out(static_cast<std::size_t>(terms), 0.0);
  for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i + 1)] = c[static_cast<std::size_t>(i)];
  return out;
}

double Profile::alpha_closed(double s) const {
  const double k = kappa_;
  const int deg = psi_poly_.degree();
  const double half = compact() ? 0.5 * s_star_ : std::numeric_limits<double>::infinity();
  double a = 0.0;
  if (s <= half) {
    if (std::abs(k) * s <= 1.0) {
      // Moments about 0: no cancellation against the collapsed end.
      const ScaledMoments m = exp_moments_scaled(k, s, deg);
      double sum = 0.0;
      for (std::size_t j = 0; j < psi_.size(); ++j) sum += psi_[j] * m.mant[j];
      a = sum * std::exp(k * s + m.log_scale);
    } else if (k < 0.0 || compact()) {
      // int_0^s e^{kappa w} Psi(s - w) dw
      const std::vector<double> d = taylor_at(psi_, s);
      const ScaledMoments m = exp_moments_scaled(-k, s, deg);
      double sum = 0.0;
      for (std::size_t j = 0; j < d.size(); ++j) sum += (j % 2 ? -d[j] : d[j]) * m.mant[j];
      a = sum * std::exp(m.log_scale);
    } else {
      // e^{kappa s} I_inf - int_0^inf e^{-kappa w} Psi(s + w) dw
      const std::vector<double> d = taylor_at(psi_, s);
      double tail = 0.0, w = 1.0 / k;
      for (std::size_t j = 0; j < d.size(); ++j) {
        if (j > 0) w *= static_cast<double>(j) / k;
        tail += d[j] * w;
      }
      const double head = mode_dropped_ ? 0.0 : mode_raw_ * std::exp(k * s);
      a = head - tail;
    }
  } else {
    // e^{kappa s} C - int_0^{s*-s} e^{-kappa w} Psi(s + w) dw
    const std::vector<double> d = taylor_at(psi_, s);
    const ScaledMoments m = exp_moments_scaled(k, s_star_ - s, deg);
    double sum = 0.0;
    for (std::size_t j = 0; j < d.size(); ++j) sum += d[j] * m.mant[j];
    const double head = mode_dropped_ ? 0.0 : mode_raw_ * std::exp(k * s + mode_log_);
    a = head - sum * std::exp(m.log_scale);
  }
  return a / v(s);
}

double Profile::alpha(double s) const {
  check_domain(s);
  if (!series_zero_.empty() && s < kSeriesRadius) return horner(series_zero_, s);
  if (!series_star_.empty() && s_star_ - s < kSeriesRadius) return horner(series_star_, s - s_star_);
  return alpha_closed(s);
}

ProfileSample Profile::sample(double s) const {
  check_domain(s);
  ProfileSample out;
  out.s = s;
  const std::size_t r = n_.size();
  out.beta.resize(r);
  out.dbeta.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    out.beta[i] = beta(i, s);
    out.dbeta[i] = -q_[i];
    if (n_[i] > 0) {
      const double x = s + sigma_[i];
      out.dlogv += n_[i] / x;
      out.d2logv -= n_[i] / (x * x);
    }
  }
  out.v = v(s);
  out.dv = horner(dv_, s);
  out.d2v = horner(d2v_, s);
  out.phi = kappa_ * (s + cfg_.kappa0);
  out.dphi = kappa_;

  const std::vector<double>* series = nullptr;
  double h = 0.0;
  if (!series_zero_.empty() && s < kSeriesRadius) {
    series = &series_zero_;
    h = s;
  } else if (!series_star_.empty() && s_star_ - s < kSeriesRadius) {
    series = &series_star_;
    h = s - s_star_;
  }
  if (series) {
    const auto& c = *series;
    double a = 0.0, da = 0.0, dda = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) {
      a = a * h + c[j];
      if (j >= 1) da = da * h + static_cast<double>(j) * c[j];
      if (j >= 2) dda = dda * h + static_cast<double>(j * (j - 1)) * c[j];
    }
    out.alpha = a;
    out.dalpha = da;
    out.d2alpha = dda;
    return out;
  }
  out.alpha = alpha_closed(s);
  const double g = out.dlogv - kappa_;
  out.dalpha = eps_ * s + e_star_ - out.alpha * g;
  out.d2alpha = eps_ - out.dalpha * g - out.alpha * out.d2logv;
  return out;
}

}  // namespace ksol
