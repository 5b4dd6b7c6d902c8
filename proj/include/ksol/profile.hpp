#pragma once

#include "ksol/model.hpp"
#include "ksol/poly.hpp"

#include <limits>
#include <vector>

namespace ksol {

struct ProfileSample {
  double s = 0.0;
  double alpha = 0.0, dalpha = 0.0, d2alpha = 0.0;
  std::vector<double> beta, dbeta;  // beta'' = 0 on the linear ansatz
  double v = 0.0, dv = 0.0, d2v = 0.0;
  double phi = 0.0, dphi = 0.0;  // phi'' = 0
  double dlogv = 0.0, d2logv = 0.0;
};

enum class CollapseEnd { Zero, Star };

// Closed-form solution of  alpha' + alpha((log v)' - kappa1) = eps s + E*,  alpha(0) = 0:
//   alpha = v^{-1} int_0^s e^{kappa1 (s - x)} Psi(x) dx,   Psi = (eps x + E*) v.
class Profile {
public:
  // Throws AdmissibilityError on structural violations; completeness violations are allowed.
  static Profile build(const SolitonConfig& cfg);
  // Validates cfg, then solves the alpha equation with E* + delta_e_star while keeping v and phi.
  // The result solves the t- and fibre equations but not the base equations.
  static Profile build_detuned(const SolitonConfig& cfg, const Rational& delta_e_star);

  const SolitonConfig& config() const { return cfg_; }
  const RationalPoly& v_poly() const { return v_poly_; }
  const RationalPoly& psi_poly() const { return psi_poly_; }
  bool compact() const { return cfg_.compact(); }
  double s_hi() const { return compact() ? s_star_ : std::numeric_limits<double>::infinity(); }

  // Coefficient K of the e^{kappa1 s}/v mode measured from the far end: C = int_0^{s*} e^{-kappa1 x} Psi
  // (compact) or I_inf = int_0^inf (noncompact, kappa1 > 0). Zero when no such mode exists.
  double exp_mode_raw() const { return mode_raw_; }
  double exp_mode_scale() const { return mode_scale_; }
  bool exp_mode_dropped() const { return mode_dropped_; }

  double alpha(double s) const;
  double v(double s) const;
  double beta(std::size_t i, double s) const;
  ProfileSample sample(double s) const;

  // Taylor coefficients of alpha in h = s - end (coefficient 0 first). Throws where v does not vanish.
  std::vector<double> alpha_series(CollapseEnd end, int terms = 14) const;

  // Distance from a root of v inside which the series replaces the closed form.
  static constexpr double kSeriesRadius = 1e-3;
  // Relative size under which the far-end mode coefficient is treated as zero.
  static constexpr double kModeSnap = 1e-11;

private:
  Profile() = default;
  static Profile assemble(const SolitonConfig& cfg);
  double alpha_closed(double s) const;
  void check_domain(double s) const;

  SolitonConfig cfg_;
  RationalPoly v_poly_, psi_poly_;
  std::vector<double> psi_, dv_, d2v_;  // double coefficients of Psi, v', v''
  std::vector<int> n_;
  std::vector<double> q_, sigma_;
  double eps_ = 0.0, e_star_ = 0.0, kappa_ = 0.0, s_star_ = 0.0;
  double mode_raw_ = 0.0, mode_scale_ = 0.0, mode_log_ = 0.0;
  bool mode_dropped_ = false;
  std::vector<double> series_zero_, series_star_;
};

}  // namespace ksol
