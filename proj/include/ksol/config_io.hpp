#pragma once

#include "ksol/homogeneous.hpp"
#include "ksol/model.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace ksol {

// Parsed run configuration. Dialect: JSON, unknown keys rejected at every level.
//
//   epsilon        number; normalized to its sign (-1, 0, +1)
//   factors        [{n, p, q}, ...]; p and q are integers, decimals or "a/b" strings
//   boundary       {collapse_at_zero: "circle" | "factor_one",
//                   compact_end: null | {collapse: "circle" | "factor_r", s_star?: number}}
//   flag_bundle    alternative to factors/boundary/sigmas:
//                  {d: [int], b: [rational], a: [rational], collapse_zero?: int,
//                   collapse_star?: int | null, closedness_asserted?: bool}
//   kappa1         number or "solve"
//   kappa0         number, default 0
//   sigmas         [rational], steady section data only
//   s_max          number, default 1e4 (noncompact sampling range)
//   grid           int, default 200
struct RunConfig {
  nlohmann::json echo;
  double epsilon_input = 0.0;
  SolitonConfig cfg;  // kappa1 = 0 placeholder when solve_kappa1
  bool solve_kappa1 = false;
  std::optional<FlagBundleData> flag_bundle;
  double s_max = 1e4;
  int grid = 200;
};

// Exact parse: integers, decimal strings and numbers (through their shortest decimal form), "a/b".
Rational parse_rational(const nlohmann::json& j, const std::string& where);

// Throws SchemaError for malformed documents; AdmissibilityError from derivation (e.g. q = 0).
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Shortest round-trip decimal (at most 17 significant digits); "nan", "inf", "-inf" otherwise.
std::string format_double(double x);

}  // namespace ksol
