#pragma once

#include "ksol/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ksol {

// Circle bundle over a flag manifold G/Q with multiplicity-free isotropy p = p_1 + ... + p_r.
// The representation theory is trusted: only the scalars below enter the computation.
struct FlagBundleData {
  std::vector<int> d;       // real dimensions of the summands, all even
  std::vector<Rational> b;  // g_i^2 = b_i s + a_i
  std::vector<Rational> a;
  // The first collapse_zero summands shrink with the circle to an S^k at s = 0 (0: circle only, k = 1).
  int collapse_zero = 0;
  // Present iff there is a second special orbit; counts summands from the end (0: circle only).
  std::optional<int> collapse_star;
  // Steady instances only: user assertion that sum a_i Theta|p_i is closed. Recorded, never inferred.
  std::optional<bool> closedness_asserted;
};

struct SphereDims {
  int k = 1;
  std::optional<int> k_tilde;
};

// Throws SchemaError on length mismatches and AdmissibilityError on odd or nonpositive d_i, b_i = 0,
// or collapse counts that overlap.
SphereDims sphere_dims(const FlagBundleData& data);

// E*_i = (eps a_i + 2) / b_i for every summand; empty when there are no summands.
std::vector<Rational> e_star_values(const FlagBundleData& data, const Rational& epsilon);

// n_i = d_i / 2, p_i = 1, q_i = -b_i, sigma_i = a_i / b_i. A collapsing block must share (a, b) and is
// merged into one end factor (identical beta_i multiply into a single power in v); an empty block
// becomes the point slot (0, 1, -1) at s = 0 or (0, 1, 1) at s*. Throws AdmissibilityError when the
// E*_i disagree beyond 1e-12 relative.
SolitonConfig to_soliton_config(const FlagBundleData& data, const Rational& epsilon, double kappa1,
                                 double kappa0 = 0.0);

struct OrbitCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SpecialOrbitReport {
  SphereDims dims;
  std::optional<Rational> e_star;
  std::optional<Rational> s_star;
  // c_i^2 = b_i / 2 for the summands collapsing at s = 0.
  std::vector<Rational> c_squared;
  std::vector<OrbitCheck> checks;
  std::optional<bool> closedness_asserted;

  bool all_pass() const;
};

// At s = 0: a_i = 0, b_i = 2/(k+1), E* = k+1. At s*: b_i = -2/(k~+1), g_i^2(s*) = 0, s* = k + k~ + 2.
SpecialOrbitReport special_orbit_conditions(const FlagBundleData& data, const Rational& epsilon);

}  // namespace ksol
