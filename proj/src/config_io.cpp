#include "ksol/config_io.hpp"

#include "ksol/errors.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

namespace ksol {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw SchemaError(where + ": unknown key \"" + key + "\"");
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw SchemaError(where + ": must be finite");
  return x;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
  const auto v = j.get<long long>();
  if (v < -1000000 || v > 1000000) throw SchemaError(where + ": integer out of range");
  return static_cast<int>(v);
}

bool all_digits(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

// BigInt's string constructor reads a leading 0 as an octal prefix.
BigInt decimal(const std::string& digits) {
  const auto nz = digits.find_first_not_of('0');
  return nz == std::string::npos ? BigInt(0) : BigInt(digits.substr(nz));
}

// [+-]digits[.digits][e[+-]digits] or [+-]digits/digits.
Rational rational_from_text(std::string s, const std::string& where) {
  auto bad = [&] { return SchemaError(where + ": cannot read \"" + s + "\" as a rational"); };
  const std::string orig = s;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  Rational out;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!all_digits(a) || !all_digits(b)) throw bad();
    const BigInt den = decimal(b);
    if (den == 0) throw SchemaError(where + ": zero denominator in \"" + orig + "\"");
    out = Rational(decimal(a), den);
  } else {
    long exp10 = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
      std::string ex = s.substr(e + 1);
      s.erase(e);
      bool eneg = false;
      if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) {
        eneg = ex[0] == '-';
        ex.erase(0, 1);
      }
      if (!all_digits(ex) || ex.size() > 4) throw bad();
      exp10 = std::stol(ex) * (eneg ? -1 : 1);
    }
    std::string digits = s;
    if (const auto dot = s.find('.'); dot != std::string::npos) {
      const std::string frac = s.substr(dot + 1);
      digits = s.substr(0, dot) + frac;
      exp10 -= static_cast<long>(frac.size());
    }
    if (!all_digits(digits)) throw bad();
    BigInt scale = 1;
    for (long k = 0; k < std::labs(exp10); ++k) scale *= 10;
    out = exp10 >= 0 ? Rational(decimal(digits) * scale) : Rational(decimal(digits), scale);
  }
  return neg ? Rational(-out) : out;
}

CollapseAtZero parse_zero(const json& j) {
  if (j == "circle") return CollapseAtZero::CircleOnly;
  if (j == "factor_one") return CollapseAtZero::FactorOne;
  throw SchemaError("boundary.collapse_at_zero: expected \"circle\" or \"factor_one\"");
}

BoundaryStructure parse_boundary(const json& j) {
  reject_unknown(j, {"collapse_at_zero", "compact_end"}, "boundary");
  BoundaryStructure b;
  if (!j.contains("collapse_at_zero")) throw SchemaError("boundary: missing collapse_at_zero");
  b.collapse_at_zero = parse_zero(j.at("collapse_at_zero"));
  if (j.contains("compact_end") && !j.at("compact_end").is_null()) {
    const json& e = j.at("compact_end");
    reject_unknown(e, {"collapse", "s_star"}, "boundary.compact_end");
    CompactEnd end;
    if (!e.contains("collapse")) throw SchemaError("boundary.compact_end: missing collapse");
    if (e.at("collapse") == "circle")
      end.collapse = CollapseAtEnd::CircleOnly;
    else if (e.at("collapse") == "factor_r")
      end.collapse = CollapseAtEnd::FactorR;
    else
      throw SchemaError("boundary.compact_end.collapse: expected \"circle\" or \"factor_r\"");
    if (e.contains("s_star")) end.s_star = number(e.at("s_star"), "boundary.compact_end.s_star");
    b.compact_end = end;
  }
  return b;
}

std::vector<Rational> rational_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_rational(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

FlagBundleData parse_flag_bundle(const json& j) {
  reject_unknown(j, {"d", "b", "a", "collapse_zero", "collapse_star", "closedness_asserted"}, "flag_bundle");
  for (const char* key : {"d", "b", "a"})
    if (!j.contains(key)) throw SchemaError(std::string("flag_bundle: missing ") + key);
  FlagBundleData f;
  if (!j.at("d").is_array()) throw SchemaError("flag_bundle.d: expected an array");
  for (std::size_t i = 0; i < j.at("d").size(); ++i) f.d.push_back(integer(j.at("d")[i], "flag_bundle.d"));
  f.b = rational_list(j.at("b"), "flag_bundle.b");
  f.a = rational_list(j.at("a"), "flag_bundle.a");
  if (j.contains("collapse_zero")) f.collapse_zero = integer(j.at("collapse_zero"), "flag_bundle.collapse_zero");
  if (j.contains("collapse_star") && !j.at("collapse_star").is_null())
    f.collapse_star = integer(j.at("collapse_star"), "flag_bundle.collapse_star");
  if (j.contains("closedness_asserted")) {
    if (!j.at("closedness_asserted").is_boolean()) throw SchemaError("flag_bundle.closedness_asserted: expected a boolean");
    f.closedness_asserted = j.at("closedness_asserted").get<bool>();
  }
  return f;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Rational parse_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw SchemaError(where + ": must be finite");
    // The shortest decimal is what the user wrote in all but pathological cases.
    return rational_from_text(format_double(x), where);
  }
  if (j.is_string()) return rational_from_text(j.get<std::string>(), where);
  throw SchemaError(where + ": expected a number or a rational string");
}

RunConfig parse_config(const json& j) {
  reject_unknown(j, {"epsilon", "factors", "boundary", "flag_bundle", "kappa1", "kappa0", "sigmas", "s_max", "grid"},
                 "config");
  RunConfig rc;
  rc.echo = j;
  if (!j.contains("epsilon")) throw SchemaError("config: missing epsilon");
  rc.epsilon_input = number(j.at("epsilon"), "epsilon");
  const Rational eps(rc.epsilon_input > 0 ? 1 : (rc.epsilon_input < 0 ? -1 : 0));

  if (!j.contains("kappa1")) throw SchemaError("config: missing kappa1");
  double kappa1 = 0.0;
  if (j.at("kappa1").is_string()) {
    if (j.at("kappa1") != "solve") throw SchemaError("kappa1: expected a number or \"solve\"");
    rc.solve_kappa1 = true;
  } else {
    kappa1 = number(j.at("kappa1"), "kappa1");
  }
  const double kappa0 = j.contains("kappa0") ? number(j.at("kappa0"), "kappa0") : 0.0;
  if (j.contains("s_max")) {
    rc.s_max = number(j.at("s_max"), "s_max");
    if (!(rc.s_max > 0.0)) throw SchemaError("s_max: must be positive");
  }
  if (j.contains("grid")) {
    rc.grid = integer(j.at("grid"), "grid");
    if (rc.grid < 2) throw SchemaError("grid: need at least 2 points");
  }

  if (j.contains("flag_bundle")) {
    for (const char* key : {"factors", "boundary", "sigmas"})
      if (j.contains(key)) throw SchemaError(std::string("config: flag_bundle excludes ") + key);
    rc.flag_bundle = parse_flag_bundle(j.at("flag_bundle"));
    rc.cfg = to_soliton_config(*rc.flag_bundle, eps, kappa1, kappa0);
    return rc;
  }

  if (!j.contains("factors")) throw SchemaError("config: missing factors (or flag_bundle)");
  if (!j.contains("boundary")) throw SchemaError("config: missing boundary");
  const json& fs = j.at("factors");
  if (!fs.is_array() || fs.empty()) throw SchemaError("factors: expected a nonempty array");
  std::vector<FanoFactor> factors;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string where = "factors[" + std::to_string(i) + "]";
    reject_unknown(fs[i], {"n", "p", "q"}, where);
    for (const char* key : {"n", "p", "q"})
      if (!fs[i].contains(key)) throw SchemaError(where + ": missing " + key);
    factors.push_back({integer(fs[i].at("n"), where + ".n"), parse_rational(fs[i].at("p"), where + ".p"),
                       parse_rational(fs[i].at("q"), where + ".q")});
  }
  std::optional<std::vector<Rational>> sigmas;
  if (j.contains("sigmas")) {
    if (eps != 0) throw SchemaError("sigmas: only steady (epsilon = 0) instances take sigma inputs");
    sigmas = rational_list(j.at("sigmas"), "sigmas");
  }
  rc.cfg = derive_config(eps, std::move(factors), parse_boundary(j.at("boundary")), kappa1, kappa0, sigmas);
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in || std::filesystem::is_directory(path)) throw SchemaError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace ksol
