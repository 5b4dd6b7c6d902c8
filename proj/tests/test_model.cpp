#include "doctest.h"

#include "ksol/catalog.hpp"
#include "ksol/errors.hpp"
#include "ksol/model.hpp"

#include <random>

using namespace ksol;

namespace {
Rational R(long n, long d = 1) { return Rational(n) / Rational(d); }
BoundaryStructure circle_open() { return {CollapseAtZero::CircleOnly, std::nullopt}; }
BoundaryStructure circle_compact() { return {CollapseAtZero::CircleOnly, CompactEnd{CollapseAtEnd::CircleOnly, {}}}; }
}  // namespace

TEST_CASE("derive_config: steady keeps sigma as input") {
  const auto cfg = derive_config(R(0), {{0, 1, -1}, {3, 4, -4}}, circle_open(), -1.0, 0.0,
                                 std::vector<Rational>{R(0), R(5, 2)});
  CHECK(cfg.E_star == 2);
  CHECK(cfg.sigmas[1] == R(5, 2));
  CHECK(validate(cfg).admissible());
  CHECK_THROWS_AS(derive_config(R(0), {{0, 1, -1}, {3, 4, -4}}, circle_open(), -1.0), AdmissibilityError);
}

TEST_CASE("derive_config: compact end gives s* = 2(n1+nr+2)") {
  const auto cfg = derive_config(R(-1), {{0, 1, -1}, {1, 2, -1}, {0, 1, 1}}, circle_compact(), 0.0);
  CHECK(cfg.s_star == 4);
  CHECK(cfg.sigmas[2] == -4);
  CHECK(validate(cfg).admissible());
  CHECK(catalog::compact_blowdown_pair().s_star == 8);
}

TEST_CASE("derive_config: sigma solved from the consistency condition") {
  // E* = 2 = eps sigma - 2p/q = -sigma + 4
  const auto cfg = catalog::noncompact_line_bundle(0.5);
  CHECK(cfg.sigmas[1] == 2);
  CHECK(cfg.sigmas[0] == 0);
  CHECK(cfg.c == doctest::Approx(1.0));  // kappa1 (E* - eps kappa0)
  CHECK(catalog::expanding_sample(-1.0).sigmas[1] == R(2, 3));
}

TEST_CASE("validate: paper instances are admissible") {
  const auto rep = validate(catalog::compact_mixed_quadric());
  CHECK(rep.admissible());
  CHECK(rep.family == SolitonClass::ShrinkingCompact);
  CHECK(catalog::compact_mixed_quadric().sigmas == std::vector<Rational>{R(0), R(-8), R(1), R(-4)});
  CHECK(validate(catalog::compact_equal_weights()).admissible());
  CHECK(validate(catalog::compact_blowdown_pair()).admissible());
  CHECK(validate(catalog::compact_odd()).admissible());
  const auto nc = validate(catalog::noncompact_line_bundle(0.7));
  CHECK(nc.admissible());
  CHECK(nc.soliton_class == SolitonClass::ShrinkingNoncompact);
  CHECK(validate(catalog::noncompact_blowdown(0.6)).admissible());
  CHECK(validate(catalog::expanding_sample(-1.0)).admissible());
  CHECK(validate(catalog::steady_family(2, -0.5, R(1))).admissible());
}

TEST_CASE("validate: constructed violations") {
  // -q2 (n1+1) = p2 + 1 breaks the steady equality.
  const auto bad = derive_config(R(0), {{0, 1, -1}, {1, 2, -3}}, circle_open(), -1.0, 0.0,
                                 std::vector<Rational>{R(0), R(1)});
  CHECK(validate(bad).has("steady equality failed"));

  const auto q1 = derive_config(R(1), {{1, 2, 1}, {1, 2, -3}}, {CollapseAtZero::FactorOne, std::nullopt}, -1.0);
  CHECK(validate(q1).has("q1 must be -1"));

  const auto steady_compact = derive_config(R(0), {{0, 1, -1}, {0, 1, 1}}, circle_compact(), 0.0);
  CHECK(validate(steady_compact).has("steady solitons have no compact end"));

  // Compact inequality at s = 0: -(n1+1) q < p fails for q = -3, p = 2.
  const auto cbad = derive_config(R(-1), {{0, 1, -1}, {1, 2, -3}, {0, 1, 1}}, circle_compact(), 0.0);
  CHECK(validate(cbad).has("compact inequality at s=0 failed"));

  // Noncompact shrinker with p too small.
  const auto nbad = derive_config(R(-1), {{0, 1, -1}, {1, 1, -1}}, circle_open(), 0.5);
  CHECK(validate(nbad).has("noncompact shrinker inequality failed"));

  // Expanding needs -q(n1+1) > p.
  const auto ebad = derive_config(R(1), {{0, 1, -1}, {1, 3, -2}}, circle_open(), -1.0);
  CHECK(validate(ebad).has("expanding inequality failed"));

  // Non-Fano factor: allowed for expanding with q < 0, rejected for shrinking.
  const auto nonfano = derive_config(R(1), {{0, 1, -1}, {1, -1, -1}}, circle_open(), -1.0);
  CHECK(validate(nonfano).admissible());
  const auto nonfano_shrink = derive_config(R(-1), {{0, 1, -1}, {1, -1, -1}}, circle_open(), 0.5);
  CHECK(validate(nonfano_shrink).has("non-Fano factor needs an expanding soliton"));
}

TEST_CASE("validate: kappa1 sign is a completeness violation, not a structural one") {
  const auto rep = validate(catalog::flat_steady(1.0));
  CHECK(rep.has("kappa1 must be <= 0"));
  CHECK(rep.structurally_admissible());
  CHECK_FALSE(rep.admissible());
  CHECK(validate(catalog::noncompact_line_bundle(-0.2)).has("kappa1 must be > 0"));
}

TEST_CASE("classify") {
  CHECK(classify(catalog::steady_family(1, -1.0, R(1))) == SolitonClass::Steady);
  CHECK(classify(catalog::expanding_sample(-1.0)) == SolitonClass::Expanding);
  CHECK(classify(with_kappa1(catalog::compact_mixed_quadric(), 0.3)) == SolitonClass::ShrinkingCompact);
  CHECK(classify(catalog::compact_mixed_quadric()) == SolitonClass::Einstein);
  CHECK(family(catalog::compact_mixed_quadric()) == SolitonClass::ShrinkingCompact);
  CHECK(classify(catalog::noncompact_line_bundle(0.7)) == SolitonClass::ShrinkingNoncompact);
}

TEST_CASE("admissible configs: first-integral constant and beta positivity") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> kd(0.05, 3.0);
  std::vector<SolitonConfig> cfgs;
  for (int t = 0; t < 20; ++t) {
    const double k = kd(rng);
    cfgs.push_back(catalog::noncompact_line_bundle(k));
    cfgs.push_back(catalog::noncompact_blowdown(k));
    cfgs.push_back(catalog::expanding_sample(-k));
    cfgs.push_back(catalog::steady_family(1 + t % 3, -k, R(1 + t, 3)));
    cfgs.push_back(with_kappa1(catalog::compact_mixed_quadric(), k - 1.5));
  }
  for (const auto& cfg : cfgs) {
    REQUIRE(validate(cfg).admissible());
    CHECK(std::abs(cfg.e_star() - cfg.eps() * cfg.kappa0 - cfg.c / cfg.kappa1) < 1e-12);
    const double hi = cfg.compact() ? cfg.s_star_d() : 100.0;
    for (std::size_t i = 0; i < cfg.r(); ++i) {
      if (cfg.factors[i].n == 0) continue;
      for (double u : {1e-9, 0.25, 0.5, 0.75, 1.0 - 1e-9}) {
        const double s = u * hi;
        CHECK(-cfg.factors[i].q * (s + cfg.sigma(i)) > 0.0);
      }
    }
  }
}
