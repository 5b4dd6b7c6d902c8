#pragma once

#include "ksol/model.hpp"
#include "ksol/poly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ksol {

// I(kappa1) = int_{-n1-1}^{nr+1} e^{-2 kappa1 (x+n1+1)} prod (x - p_i/q_i)^{n_i} x dx.
// Its zeros are the kappa1 for which the compact profile closes up at s*.
struct FutakiEvaluation {
  double kappa1 = 0.0;
  double value = 0.0;
  // Present iff kappa1 == 0.
  std::optional<Rational> exact_value;
  // Integrand of the same integral in y = 2(x + n1 + 1) on [0, s*], before the 2^{-(sum n + 2)} factor.
  RationalPoly integrand_poly;
  // Value recomputed from integrand_poly, for cross-checking.
  double y_form_value = 0.0;
};

// Throws AdmissibilityError unless cfg is a structurally admissible compact shrinker.
FutakiEvaluation futaki_integral(const SolitonConfig& cfg, double kappa1);
// prod (x - p_i/q_i)^{n_i} x
RationalPoly futaki_x_poly(const SolitonConfig& cfg);
// y^{n1} (y - s*)^{nr} (y - 2n1 - 2) prod_{1<i<r} (y + sigma_i)^{n_i}
RationalPoly futaki_y_poly(const SolitonConfig& cfg);

enum class Direction { PlusInfinity, MinusInfinity };
// Sign of I as kappa1 -> +/- infinity, from the lowest-order coefficient at the matching end.
int asymptotic_sign(const SolitonConfig& cfg, Direction d);

struct RootResult {
  double kappa1 = 0.0;
  std::pair<double, double> bracket{0.0, 0.0};
  double residual = 0.0;
  int iterations = 0;
  // Descartes sign-change count of the coefficient polynomial (noncompact only).
  std::optional<int> uniqueness_certificate;
  // Every sign change seen while scanning (compact only).
  std::vector<std::pair<double, double>> scan_brackets;
};

// Scans kappa1 = 0, +-step, +-2 step, ... until each side shows its asymptotic sign, then refines
// the sign change nearest 0. Throws NumericError if no bracket is found inside the half-width.
RootResult find_kappa1_compact(const SolitonConfig& cfg, double search_halfwidth = 50.0, double step = 0.25);

// chi(y) = sum_{k=n1}^{D} k! a_k y^{k-n1} from Psi(x) = (2n1+2-x) x^{n1} prod_{i>1} |q_i|^{n_i} (x+sigma_i)^{n_i}.
// kappa1 = 1/y* for the unique positive root y*.
RationalPoly chi_poly(const SolitonConfig& cfg);
RootResult find_kappa1_noncompact(const SolitonConfig& cfg);

// Config with factors 1 and r swapped and every q negated.
SolitonConfig reflected_config(const SolitonConfig& cfg);
// lhs = I(-kappa1, -q), rhs = (-1)^{1 + sum n} e^{4 kappa1 (n1+1)} I(kappa1, q). Requires n1 = nr.
std::pair<double, double> symmetry_identity_check(const SolitonConfig& cfg, double kappa1);

}  // namespace ksol
