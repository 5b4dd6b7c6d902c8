#pragma once

#include "ksol/poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ksol {

// One Kaehler-Einstein base factor: complex dimension n, Ric = p h, Euler coefficient q.
// n = 0 marks a point kept only so the collapsing bookkeeping has a slot.
// Rescaling h -> h / lambda maps (p, q) to (lambda p, lambda q) and leaves the metric unchanged, so
// non-integer pairs such as (1, -1/2) from homogeneous data are accepted.
struct FanoFactor {
  int n = 0;
  Rational p{1};
  Rational q{-1};
};

enum class CollapseAtZero { CircleOnly, FactorOne };
enum class CollapseAtEnd { CircleOnly, FactorR };

struct CompactEnd {
  CollapseAtEnd collapse = CollapseAtEnd::CircleOnly;
  // Derived when absent; if given it must equal 2(n_1 + n_r + 2).
  std::optional<double> s_star;
};

struct BoundaryStructure {
  CollapseAtZero collapse_at_zero = CollapseAtZero::CircleOnly;
  std::optional<CompactEnd> compact_end;
};

enum class SolitonClass { Steady, Expanding, ShrinkingCompact, ShrinkingNoncompact, Einstein };
std::string to_string(SolitonClass c);

// Exact data is kept as Rational; doubles are the same values rounded once.
struct SolitonConfig {
  Rational epsilon;
  std::vector<FanoFactor> factors;
  BoundaryStructure boundary;
  double kappa1 = 0.0;
  double kappa0 = 0.0;
  std::vector<Rational> sigmas;
  Rational E_star;
  double c = 0.0;
  // -sigma_r for a compact end, 0 otherwise.
  Rational s_star;

  double eps() const { return to_double(epsilon); }
  double sigma(std::size_t i) const { return to_double(sigmas.at(i)); }
  double e_star() const { return to_double(E_star); }
  double s_star_d() const { return to_double(s_star); }
  bool compact() const { return boundary.compact_end.has_value(); }
  std::size_t r() const { return factors.size(); }
  int n_first() const { return factors.front().n; }
  int n_last() const { return factors.back().n; }
  // Sum of all n_i.
  int total_n() const;
};

// sigma_inputs: one entry per factor, used only when epsilon = 0 (entry 0 must be 0).
SolitonConfig derive_config(const Rational& epsilon, std::vector<FanoFactor> factors,
                            BoundaryStructure boundary, double kappa1, double kappa0 = 0.0,
                            std::optional<std::vector<Rational>> sigma_inputs = std::nullopt);

// Same config with kappa1 replaced and c recomputed.
SolitonConfig with_kappa1(const SolitonConfig& cfg, double kappa1);

enum class ViolationKind { Structural, Completeness };

struct Violation {
  std::string name;
  std::string detail;
  ViolationKind kind = ViolationKind::Structural;
};

struct ValidationReport {
  SolitonClass soliton_class = SolitonClass::Steady;
  // Class by epsilon sign and boundary alone (never Einstein); selects the rule set.
  SolitonClass family = SolitonClass::Steady;
  bool einstein = false;
  std::vector<Violation> violations;
  std::map<std::string, double> derived;

  bool admissible() const { return violations.empty(); }
  bool structurally_admissible() const;
  bool has(const std::string& name) const;
};

SolitonClass family(const SolitonConfig& cfg);
SolitonClass classify(const SolitonConfig& cfg);
ValidationReport validate(const SolitonConfig& cfg);

}  // namespace ksol
