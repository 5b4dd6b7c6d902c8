#include "ksol/catalog.hpp"

namespace ksol::catalog {

namespace {

BoundaryStructure open_end(CollapseAtZero z) { return {z, std::nullopt}; }

BoundaryStructure compact_end(CollapseAtZero z, CollapseAtEnd e) { return {z, CompactEnd{e, std::nullopt}}; }

}  // namespace

SolitonConfig flat_steady(double kappa1) {
  return derive_config(Rational(0), {{0, 1, -1}, {0, 1, -1}}, open_end(CollapseAtZero::CircleOnly), kappa1);
}

SolitonConfig steady_family(int n, double kappa1, const Rational& sigma2) {
  return derive_config(Rational(0), {{0, 1, -1}, {n, n + 1, -(n + 1)}}, open_end(CollapseAtZero::CircleOnly), kappa1,
                       0.0, std::vector<Rational>{Rational(0), sigma2});
}

SolitonConfig expanding_sample(double kappa1) {
  return derive_config(Rational(1), {{0, 1, -1}, {1, 2, -3}}, open_end(CollapseAtZero::CircleOnly), kappa1);
}

SolitonConfig compact_mixed_quadric() {
  return derive_config(Rational(-1), {{0, 1, -1}, {2, 3, 1}, {2, 3, -2}, {0, 1, 1}},
                       compact_end(CollapseAtZero::CircleOnly, CollapseAtEnd::CircleOnly), 0.0);
}

SolitonConfig compact_equal_weights() {
  return derive_config(Rational(-1), {{0, 1, -1}, {3, 2, -1}, {3, 2, -1}, {0, 1, 1}},
                       compact_end(CollapseAtZero::CircleOnly, CollapseAtEnd::CircleOnly), 0.0);
}

SolitonConfig compact_blowdown_pair() {
  return derive_config(Rational(-1), {{1, 2, -1}, {4, 3, -1}, {1, 2, 1}},
                       compact_end(CollapseAtZero::FactorOne, CollapseAtEnd::FactorR), 0.0);
}

SolitonConfig compact_odd() {
  return derive_config(Rational(-1), {{0, 1, -1}, {1, 2, 1}, {1, 2, -1}, {0, 1, 1}},
                       compact_end(CollapseAtZero::CircleOnly, CollapseAtEnd::CircleOnly), 0.0);
}

SolitonConfig noncompact_line_bundle(double kappa1) {
  return derive_config(Rational(-1), {{0, 1, -1}, {1, 2, -1}}, open_end(CollapseAtZero::CircleOnly), kappa1);
}

SolitonConfig noncompact_flat(double kappa1) {
  return derive_config(Rational(-1), {{0, 1, -1}, {0, 1, -1}}, open_end(CollapseAtZero::CircleOnly), kappa1);
}

SolitonConfig noncompact_blowdown(double kappa1) {
  return derive_config(Rational(-1), {{1, 2, -1}, {1, 3, -1}}, open_end(CollapseAtZero::FactorOne), kappa1);
}

}  // namespace ksol::catalog
