#pragma once

#include "ksol/model.hpp"

// Named instances shared by tests, the acceptance suite and the CLI.
namespace ksol::catalog {

// eps = 0, r = 2, all n_i = 0: alpha = 2s when kappa1 = 0, the cigar 2(1 - e^{-s}) when kappa1 = -1.
SolitonConfig flat_steady(double kappa1);

// eps = 0, circle collapse, one factor CP^n-like (n, n+1, -(n+1)) with free sigma.
SolitonConfig steady_family(int n, double kappa1, const Rational& sigma2);

// eps = +1, circle collapse, factor (1, 2, -3): sigma_2 = 2/3.
SolitonConfig expanding_sample(double kappa1);

// eps = -1 compact, r = 4, n = (0,2,2,0), p = 3, q = (-1, 1, -2, 1). I(0) = 39/5.
SolitonConfig compact_mixed_quadric();
// eps = -1 compact, r = 4, n = (0,3,3,0), p = 2, q = (-1,-1,-1,1). I(0) = 1368/7.
SolitonConfig compact_equal_weights();
// eps = -1 compact, r = 3, n = (1,4,1), p_2 = 3, q_2 = -1. I(0) = -7680/7.
SolitonConfig compact_blowdown_pair();
// eps = -1 compact, r = 4, n = (0,1,1,0), p = 2, q = (-1, 1, -1, 1): odd integrand, I(0) = 0.
SolitonConfig compact_odd();

// eps = -1 noncompact, r = 2, n = (0,1), p_2 = 2, q_2 = -1: Psi = 4 - x^2, kappa1 = 1/sqrt 2.
SolitonConfig noncompact_line_bundle(double kappa1);
// eps = -1 noncompact, r = 2, n = (0,0): Psi = 2 - x, kappa1 = 1/2 (flat Gaussian shrinker).
SolitonConfig noncompact_flat(double kappa1);
// eps = -1 noncompact with a blown-down CP^1 at s = 0: n = (1,1), p_2 = 3, q_2 = -1, sigma_2 = 2.
SolitonConfig noncompact_blowdown(double kappa1);

}  // namespace ksol::catalog
