#pragma once

#include "ksol/poly.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <random>
#include <vector>

namespace ksol::test {

// Independent numerical oracle: adaptive 31-point Gauss-Kronrod.
template <class F>
double quad(F f, double a, double b, double tol = 1e-13) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &err);
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

inline RationalPoly random_poly(std::mt19937& rng, int max_degree, int max_num = 9, int max_den = 4) {
  std::uniform_int_distribution<int> deg(0, max_degree), num(-max_num, max_num), den(1, max_den);
  const int d = deg(rng);
  std::vector<Rational> c;
  for (int k = 0; k <= d; ++k) c.emplace_back(Rational(num(rng)) / den(rng));
  return RationalPoly(std::move(c));
}

}  // namespace ksol::test
