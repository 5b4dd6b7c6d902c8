#pragma once

#include "ksol/profile.hpp"

#include <vector>

namespace ksol {

// Residuals in the form LHS - eps/2, evaluated from closed-form samples.
// Per-factor arrays are indexed [factor][grid point].
struct ResidualGrid {
  std::vector<double> s_values;
  std::vector<double> r_t, r_fibre;
  std::vector<std::vector<double>> r_base;
  std::vector<double> c_values;
  std::vector<std::vector<double>> mu;
  std::vector<double> bianchi;
};

struct ResidualSummary {
  double max_t = 0.0, max_fibre = 0.0, max_base = 0.0;
  double c_min = 0.0, c_max = 0.0;
  double max_mu = 0.0;
  double bianchi_min = 0.0, bianchi_max = 0.0;

  double max_equation() const;
  double c_spread() const { return c_max - c_min; }
};

struct PointResiduals {
  double t = 0.0, fibre = 0.0;
  std::vector<double> base;
};

// n points log-spaced on [max(1e-3, lo), min(s_max, 0.999 s*)].
std::vector<double> default_grid(const Profile& p, int n = 200, double s_max = 100.0);

// The three equation families at one sample; the sample may be perturbed by the caller.
PointResiduals residuals_at(const SolitonConfig& cfg, const ProfileSample& x);
ResidualGrid soliton_residuals(const Profile& p, const std::vector<double>& s_values);
ResidualSummary summarize(const ResidualGrid& g);

double first_integral(const Profile& p, double s);
double first_integral_at(const SolitonConfig& cfg, const ProfileSample& x);

// beta''/beta - (beta'/beta)^2 / 2 + q^2 / (2 beta^2)
double mu_value(double beta, double dbeta, double d2beta, double q);
std::vector<double> mu_values(const Profile& p, double s);

// alpha v^2 (-tr Ldot - tr L^2 + u'' + eps/2): the normal-normal equation scaled by the squared
// full volume ratio (f v)^2, with t-derivatives rewritten via d/dt = sqrt(alpha) d/ds.
double bianchi_quantity(const Profile& p, double s);
double bianchi_quantity_at(const SolitonConfig& cfg, const ProfileSample& x);

// Functions of t on a uniform grid t_k = t0 + k h; g is indexed [factor][k].
struct TSamples {
  double t0 = 0.0, h = 0.0;
  std::vector<double> f, u;
  std::vector<std::vector<double>> g;
};

// Residuals of the normal-normal, fibre and base equations in t at interior points t0 + (k+2) h.
struct TResiduals {
  std::vector<double> t;
  std::vector<double> r_nn, r_uu;
  std::vector<std::vector<double>> r_xx;

  double max_abs() const;
};

// 4th-order central differences; throws std::invalid_argument for fewer than 5 samples or h <= 0.
TResiduals t_coordinate_residuals(const std::vector<FanoFactor>& factors, double eps, const TSamples& x);

// Integrates the fibre and base equations together with the third-order potential equation, with no
// ansatz, from data that violates the normal-normal equation. Along any such solution
// Q = V^2 (-tr Ldot - tr L^2 + u'' + eps/2), V = f prod g_i^{2 n_i}, satisfies Q' = 2 Q u'.
struct FreeState {
  double f = 1.0, df = 0.0;
  std::vector<double> g, dg;
  double u = 0.0, du = 0.0, d2u = 0.0;
};

struct ConservationTrace {
  std::vector<double> t, q, u;
  // q e^{-2u}: constant along the flow.
  std::vector<double> scaled;
};

ConservationTrace integrate_free_system(const std::vector<FanoFactor>& factors, double eps, const FreeState& start,
                                        double t0, double t1, int n_out);

}  // namespace ksol
