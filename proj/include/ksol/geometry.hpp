#pragma once

#include "ksol/profile.hpp"
#include "ksol/residuals.hpp"

#include <map>
#include <string>
#include <vector>

namespace ksol {

// Geodesic distance t(s) = int_0^s dx / sqrt(alpha). Substitutions x = w^2 near 0 and x = s* - w^2
// near a compact end make the integrand smooth. Throws AdmissibilityError if alpha <= 0 on the path.
double t_of_s(const Profile& p, double s, double rel_tol = 1e-10);
// int_a^b dx / sqrt(alpha), same treatment.
double t_segment(const Profile& p, double a, double b, double rel_tol = 1e-10);

// Bracketed Newton on the quadrature (never interpolation); throws std::out_of_range past the domain.
double s_of_t(const Profile& p, double t);

struct MetricFunctions {
  std::vector<double> t_grid;
  std::vector<double> f, u;
  std::vector<std::vector<double>> g;  // [factor][k]
  std::vector<double> s_of_t;
};

// t_grid must be nondecreasing and inside [0, t(s_hi)).
MetricFunctions metric_functions(const Profile& p, const std::vector<double>& t_grid);
// Uniform t grid only: packs the functions for t_coordinate_residuals.
TSamples to_t_samples(const MetricFunctions& m);

// Hyperbolic: expanding with kappa1 = 0, alpha ~ s^2, so f and g grow exponentially in t.
enum class Completeness { CigarParaboloid, AsymptoticallyConical, Compact, Incomplete, Hyperbolic };
std::string to_string(Completeness c);

struct CompletenessReport {
  Completeness cls = Completeness::Incomplete;
  // alpha_slope: s alpha'/alpha at the probe; t_slope: d log t / d log s; f_slope, g_slope: d log f,
  // d log g_i / d log t (g of the last factor with n > 0).
  std::map<std::string, double> slope_estimates;
  double geodesic_length = 0.0;
  bool length_infinite = false;
  std::string reason;
};

// Noncompact profiles are probed at s = 1e3 and 1e4.
CompletenessReport completeness_report(const Profile& p);

// F is an antiderivative of 1/u'(t); in s, F(s) = int_{s_mid}^s dx / (kappa1 alpha(x)).
// Tabulated on log-spaced nodes; F(s) between nodes is computed by quadrature from the nearest node.
class FlowMap {
public:
  // Throws AdmissibilityError for profiles failing validation and for kappa1 = 0 (F undefined; use Xi = t).
  static FlowMap build(const Profile& p);

  double epsilon() const { return eps_; }
  double s_min() const { return nodes_.front(); }
  double s_max() const { return nodes_.back(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }

  double F(double s) const;
  // Bracketed Newton; throws std::out_of_range outside the tabulated values.
  double F_inverse(double y) const;

  // Xi(tau, t) = F^{-1}(log(1 + eps tau)/eps + F(t)), or F^{-1}(tau + F(t)) when eps = 0; t in geodesic
  // distance. Throws std::out_of_range for 1 + eps tau <= 0 or results outside the table.
  double xi(double tau, double t) const;

private:
  explicit FlowMap(const Profile& p) : profile_(p) {}
  double panel(double a, double b) const;

  Profile profile_;
  double eps_ = 0.0, kappa_ = 0.0, s_star_ = 0.0;
  bool compact_ = false;
  std::vector<double> nodes_, values_;
};

// Convenience: builds the map once per call. Xi = t when kappa1 = 0.
double flow_trajectory(const Profile& p, double tau, double t);

}  // namespace ksol
