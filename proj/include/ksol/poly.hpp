#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>
#include <vector>

namespace ksol {

// Always reduced, denominator positive.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

double to_double(const Rational& r);
// Exact: every finite double is a dyadic rational.
Rational from_double(double x);
std::string to_string(const Rational& r);

class RationalPoly {
public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs);
  static RationalPoly constant(const Rational& c);
  static RationalPoly monomial(const Rational& c, int degree);
  // x + a
  static RationalPoly linear(const Rational& a);

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coeff(int k) const;

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  RationalPoly derivative() const;
  // Zero constant term.
  RationalPoly antiderivative() const;
  // Returns P(x + a).
  RationalPoly shifted(const Rational& a) const;
  RationalPoly pow(int e) const;
  std::vector<double> to_doubles() const;

  RationalPoly& operator+=(const RationalPoly& o);
  RationalPoly& operator-=(const RationalPoly& o);
  RationalPoly& operator*=(const Rational& k);

  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.c_ == b.c_; }

private:
  void trim();
  std::vector<Rational> c_;
};

RationalPoly operator+(RationalPoly a, const RationalPoly& b);
RationalPoly operator-(RationalPoly a, const RationalPoly& b);
RationalPoly operator*(RationalPoly a, const Rational& k);
RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b);
inline RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) { return poly_mul(a, b); }

std::string to_string(const RationalPoly& p);

// Product of (x + sigma)^n over the list.
RationalPoly build_shifted_product(const std::vector<std::pair<Rational, int>>& shifts);

// Sign changes of the nonzero coefficient sequence. Throws on the zero polynomial.
int sign_changes(const RationalPoly& p);

// Value represented as mant * exp(log_scale); keeps e^{|kappa| L} growth out of the mantissa.
struct Scaled {
  double mant = 0.0;
  double log_scale = 0.0;
  double value() const;
};

// moments[m] = int_0^upper e^{-kappa x} x^m dx.
struct ExpMomentTable {
  double kappa = 0.0;
  double upper = 0.0;
  std::vector<double> moments;
};

ExpMomentTable exp_moments(double kappa, double upper, int max_degree);

// Same moments with a common factor exp(log_scale) removed; log_scale > 0 only when kappa < 0
// and |kappa| upper is large.
struct ScaledMoments {
  std::vector<double> mant;
  double log_scale = 0.0;
};
ScaledMoments exp_moments_scaled(double kappa, double upper, int max_degree);

// int_a^b e^{-kappa x} P(x) dx, a <= b. kappa == 0 goes through the exact antiderivative.
double exp_poly_integral(const RationalPoly& p, double kappa, double a, double b);
Scaled exp_poly_integral_scaled(const RationalPoly& p, double kappa, double a, double b);
// kappa = 0 path, exact.
Rational poly_integral_exact(const RationalPoly& p, const Rational& a, const Rational& b);

}  // namespace ksol
