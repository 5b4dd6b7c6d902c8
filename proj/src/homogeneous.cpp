#include "ksol/homogeneous.hpp"

#include "ksol/errors.hpp"

#include <cmath>

namespace ksol {

namespace {

struct Block {
  std::size_t begin = 0, end = 0;
  bool empty() const { return begin == end; }
};

Block zero_block(const FlagBundleData& data) { return {0, static_cast<std::size_t>(data.collapse_zero)}; }

Block star_block(const FlagBundleData& data) {
  const std::size_t r = data.d.size();
  const auto m = static_cast<std::size_t>(data.collapse_star.value_or(0));
  return {r - m, r};
}

int half_dim(const FlagBundleData& data, Block blk) {
  int n = 0;
  for (std::size_t i = blk.begin; i < blk.end; ++i) n += data.d[i] / 2;
  return n;
}

// One end factor standing for a whole collapsing block.
FanoFactor merged(const FlagBundleData& data, Block blk, const char* where) {
  for (std::size_t i = blk.begin + 1; i < blk.end; ++i)
    if (data.b[i] != data.b[blk.begin] || data.a[i] != data.a[blk.begin])
      throw AdmissibilityError(std::string("summands collapsing at ") + where + " must share (a, b)");
  return {half_dim(data, blk), Rational(1), -data.b[blk.begin]};
}

}  // namespace

SphereDims sphere_dims(const FlagBundleData& data) {
  const std::size_t r = data.d.size();
  if (data.b.size() != r || data.a.size() != r) throw SchemaError("d, b and a must have the same length");
  for (std::size_t i = 0; i < r; ++i) {
    if (data.d[i] <= 0 || data.d[i] % 2 != 0)
      throw AdmissibilityError("summand " + std::to_string(i + 1) + ": dimension must be even and positive");
    if (data.b[i] == 0) throw AdmissibilityError("summand " + std::to_string(i + 1) + ": b must be nonzero");
  }
  const int m = data.collapse_zero, mt = data.collapse_star.value_or(0);
  if (m < 0 || mt < 0 || static_cast<std::size_t>(m + mt) > r)
    throw AdmissibilityError("collapsing blocks overlap or exceed the number of summands");
  SphereDims out;
  out.k = 1 + 2 * half_dim(data, zero_block(data));
  if (data.collapse_star) out.k_tilde = 1 + 2 * half_dim(data, star_block(data));
  return out;
}

std::vector<Rational> e_star_values(const FlagBundleData& data, const Rational& epsilon) {
  (void)sphere_dims(data);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < data.d.size(); ++i) out.push_back((epsilon * data.a[i] + 2) / data.b[i]);
  return out;
}

SolitonConfig to_soliton_config(const FlagBundleData& data, const Rational& epsilon, double kappa1, double kappa0) {
  const auto e = e_star_values(data, epsilon);
  const Block z = zero_block(data), st = star_block(data);
  const bool compact = data.collapse_star.has_value();

  // E* from the summands; an instance without summands takes the circle-collapse value 2.
  Rational e_star = e.empty() ? Rational(2) : e.front();
  for (std::size_t i = 1; i < e.size(); ++i) {
    const double lhs = to_double(e[i]), rhs = to_double(e_star);
    if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(rhs)))
      throw AdmissibilityError("E* = (eps a_i + 2)/b_i is inconsistent: summand 1 gives " + to_string(e_star) +
                               ", summand " + std::to_string(i + 1) + " gives " + to_string(e[i]));
  }

  SolitonConfig cfg;
  cfg.epsilon = epsilon;
  cfg.kappa0 = kappa0;
  cfg.E_star = e_star;
  cfg.boundary.collapse_at_zero = z.empty() ? CollapseAtZero::CircleOnly : CollapseAtZero::FactorOne;
  if (compact)
    cfg.boundary.compact_end = CompactEnd{st.empty() ? CollapseAtEnd::CircleOnly : CollapseAtEnd::FactorR, std::nullopt};

  if (z.empty()) {
    cfg.factors.push_back({0, Rational(1), Rational(-1)});
    cfg.sigmas.push_back(Rational(0));
  } else {
    cfg.factors.push_back(merged(data, z, "s = 0"));
    cfg.sigmas.push_back(data.a[z.begin] / data.b[z.begin]);
  }
  const std::size_t mid_end = compact ? st.begin : data.d.size();
  for (std::size_t i = z.end; i < mid_end; ++i) {
    cfg.factors.push_back({data.d[i] / 2, Rational(1), -data.b[i]});
    cfg.sigmas.push_back(data.a[i] / data.b[i]);
  }
  if (compact) {
    if (st.empty()) {
      if (epsilon == 0) throw AdmissibilityError("a compact end needs epsilon != 0");
      // beta_r = s + sigma_r for the point slot; consistency with p/q = 1 fixes sigma_r.
      cfg.factors.push_back({0, Rational(1), Rational(1)});
      cfg.sigmas.push_back((e_star + 2) / epsilon);
    } else {
      cfg.factors.push_back(merged(data, st, "s*"));
      cfg.sigmas.push_back(data.a[st.begin] / data.b[st.begin]);
    }
    cfg.s_star = -cfg.sigmas.back();
  }
  return with_kappa1(cfg, kappa1);
}

bool SpecialOrbitReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

SpecialOrbitReport special_orbit_conditions(const FlagBundleData& data, const Rational& epsilon) {
  SpecialOrbitReport rep;
  rep.dims = sphere_dims(data);
  rep.closedness_asserted = data.closedness_asserted;
  const auto e = e_star_values(data, epsilon);
  const Block z = zero_block(data), st = star_block(data);
  auto check = [&](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };
  const int k = rep.dims.k;

  for (std::size_t i = z.begin; i < z.end; ++i) {
    const std::string tag = "summand " + std::to_string(i + 1);
    check(tag + ": a = 0", data.a[i] == 0, "a = " + to_string(data.a[i]));
    const Rational want = Rational(2) / Rational(k + 1);
    check(tag + ": b = 2/(k+1)", data.b[i] == want, "b = " + to_string(data.b[i]) + ", want " + to_string(want));
    rep.c_squared.push_back(data.b[i] / 2);
  }

  const Rational e_want(k + 1);
  if (!e.empty()) {
    rep.e_star = e.front();
    for (std::size_t i = 0; i < e.size(); ++i)
      check("summand " + std::to_string(i + 1) + ": E* = k+1", e[i] == e_want,
            "E* = " + to_string(e[i]) + ", want " + to_string(e_want));
  }

  if (data.collapse_star) {
    const int kt = *rep.dims.k_tilde;
    const Rational s_want(k + kt + 2);
    if (st.empty()) {
      // Circle-only end: s* follows from E* through the point slot, as in the mapped config.
      if (epsilon != 0) rep.s_star = -(rep.e_star.value_or(e_want) + 2) / epsilon;
    } else {
      rep.s_star = -data.a[st.begin] / data.b[st.begin];
      for (std::size_t i = st.begin; i < st.end; ++i) {
        const std::string tag = "summand " + std::to_string(i + 1);
        const Rational want = Rational(-2) / Rational(kt + 1);
        check(tag + ": b = -2/(k~+1)", data.b[i] == want, "b = " + to_string(data.b[i]) + ", want " + to_string(want));
        check(tag + ": g^2 vanishes at s*", data.b[i] * *rep.s_star + data.a[i] == 0,
              "b s* + a = " + to_string(data.b[i] * *rep.s_star + data.a[i]));
      }
    }
    if (rep.s_star)
      check("s* = k + k~ + 2", *rep.s_star == s_want, "s* = " + to_string(*rep.s_star) + ", want " + to_string(s_want));
    else
      check("s* = k + k~ + 2", false, "s* undetermined: circle-only end with epsilon = 0");
  }

  if (epsilon == 0)
    check("closedness of sum a_i Theta|p_i asserted", data.closedness_asserted.value_or(false),
          data.closedness_asserted ? (*data.closedness_asserted ? "asserted by the user" : "denied by the user")
                                   : "not asserted");
  return rep;
}

}  // namespace ksol
