#include "ksol/poly.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ksol {

namespace mp = boost::multiprecision;

double to_double(const Rational& r) {
  BigInt n = mp::numerator(r);
  BigInt d = mp::denominator(r);
  if (n == 0) return 0.0;
  const bool neg = n < 0;
  if (neg) n = -n;
  // Scale so the integer quotient lands in [2^61, 2^63); the remainder becomes a sticky bit
  // far below double precision, so the final uint64 -> double conversion rounds once.
  const long e = static_cast<long>(mp::msb(n)) - static_cast<long>(mp::msb(d));
  const long shift = 62 - e;
  if (shift > 0) n <<= static_cast<unsigned>(shift);
  else if (shift < 0) d <<= static_cast<unsigned>(-shift);
  BigInt q, rem;
  mp::divide_qr(n, d, q, rem);
  auto bits = q.convert_to<std::uint64_t>();
  if (rem != 0) bits |= 1u;
  const double m = std::ldexp(static_cast<double>(bits), static_cast<int>(-shift));
  return neg ? -m : m;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("from_double: non-finite value");
  if (x == 0.0) return Rational(0);
  int e = 0;
  const double m = std::frexp(x, &e);
  const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  Rational r{BigInt(mant)};
  const int p = e - 53;
  if (p > 0) r *= Rational(BigInt(1) << p);
  else if (p < 0) r /= Rational(BigInt(1) << -p);
  return r;
}

std::string to_string(const Rational& r) {
  if (mp::denominator(r) == 1) return mp::numerator(r).str();
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RationalPoly RationalPoly::constant(const Rational& c) { return RationalPoly({c}); }

RationalPoly RationalPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::linear(const Rational& a) { return RationalPoly({a, Rational(1)}); }

void RationalPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RationalPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

Rational RationalPoly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPoly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

RationalPoly RationalPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
  return RationalPoly(std::move(d));
}

RationalPoly RationalPoly::antiderivative() const {
  if (c_.empty()) return {};
  std::vector<Rational> a(c_.size() + 1);
  for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / static_cast<long>(k + 1);
  return RationalPoly(std::move(a));
}

RationalPoly RationalPoly::shifted(const Rational& a) const {
  if (a == 0) return *this;
  // Horner in the ring: acc <- acc * (x + a) + c_k.
  std::vector<Rational> acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    std::vector<Rational> next(acc.size() + 1);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k];
      next[k] += acc[k] * a;
    }
    next[0] += *it;
    acc = std::move(next);
  }
  return RationalPoly(std::move(acc));
}

RationalPoly RationalPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("RationalPoly::pow: negative exponent");
  RationalPoly result = constant(Rational(1));
  RationalPoly base = *this;
  while (e > 0) {
    if (e & 1) result = poly_mul(result, base);
    e >>= 1;
    if (e > 0) base = poly_mul(base, base);
  }
  return result;
}

std::vector<double> RationalPoly::to_doubles() const {
  std::vector<double> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(to_double(c));
  return out;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& k) {
  for (auto& c : c_) c *= k;
  trim();
  return *this;
}

RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
RationalPoly operator*(RationalPoly a, const Rational& k) { return a *= k; }

RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Rational> out(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  return RationalPoly(std::move(out));
}

std::string to_string(const RationalPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational c = p.coeff(k);
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Rational a = c < 0 ? Rational(-c) : c;
    if (k == 0 || a != 1) os << to_string(a);
    if (k >= 1) os << (k == 0 || a != 1 ? "*x" : "x");
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

RationalPoly build_shifted_product(const std::vector<std::pair<Rational, int>>& shifts) {
  RationalPoly out = RationalPoly::constant(Rational(1));
  for (const auto& [sigma, n] : shifts) {
    if (n < 0) throw std::invalid_argument("build_shifted_product: negative exponent");
    out = poly_mul(out, RationalPoly::linear(sigma).pow(n));
  }
  return out;
}

int sign_changes(const RationalPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("sign_changes: zero polynomial");
  int changes = 0;
  int last = 0;
  for (const auto& c : p.coeffs()) {
    const int s = c > 0 ? 1 : (c < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

double Scaled::value() const {
  if (mant == 0.0) return 0.0;
  return mant * std::exp(log_scale);
}

namespace {

constexpr double kTaylorCutoff = 1e-4;
constexpr int kTaylorTerms = 12;
// Below this the un-scaled sums stay far from overflow.
constexpr double kDirectLimit = 600.0;

// Poisson weight e^{-z} z^k / k! in log form.
double poisson_weight(double z, int k) {
  return std::exp(-z + k * std::log(z) - std::lgamma(k + 1.0));
}

// P(Poisson(z) <= j).
double poisson_cdf(double z, int j) {
  double sum = 0.0;
  if (z <= kDirectLimit) {
    double term = 1.0;
    for (int i = 0; i <= j; ++i) {
      if (i > 0) term *= z / i;
      sum += term;
    }
    return sum * std::exp(-z);
  }
  for (int i = 0; i <= j; ++i) sum += poisson_weight(z, i);
  return sum;
}

}  // namespace

ScaledMoments exp_moments_scaled(double kappa, double upper, int max_degree) {
  if (!(upper >= 0.0) || !std::isfinite(upper)) throw std::invalid_argument("exp_moments: bad upper limit");
  if (max_degree < 0) return {};
  const auto count = static_cast<std::size_t>(max_degree) + 1;
  ScaledMoments out;
  out.mant.assign(count, 0.0);
  if (upper == 0.0) return out;
  const double L = upper;
  const double z = kappa * L;

  if (std::abs(z) < kTaylorCutoff) {
    // int_0^1 e^{-z t} t^j dt = sum_k (-z)^k / (k! (j+k+1))
    for (std::size_t j = 0; j < count; ++j) {
      double sum = 0.0;
      double zk = 1.0;
      for (int k = 0; k < kTaylorTerms; ++k) {
        if (k > 0) zk *= -z / k;
        sum += zk / static_cast<double>(j + static_cast<std::size_t>(k) + 1);
      }
      out.mant[j] = std::pow(L, static_cast<double>(j + 1)) * sum;
    }
    return out;
  }

  if (z > 0.0) {
    for (std::size_t j = 0; j < count; ++j) {
      const double jd = static_cast<double>(j);
      if (z >= jd + 1.0) {
        // j!/kappa^{j+1} * P(Poisson(z) > j); complement is at most about 1/2 here.
        double lead = 1.0 / kappa;
        for (std::size_t i = 1; i <= j; ++i) lead *= static_cast<double>(i) / kappa;
        out.mant[j] = lead * (1.0 - poisson_cdf(z, static_cast<int>(j)));
      } else {
        // e^{-z} sum_k z^k / ((j+1)...(j+k+1)); ratio z/(j+k+1) < 1, all terms positive.
        double term = 1.0 / (jd + 1.0);
        double sum = term;
        for (int k = 1; k < 100000; ++k) {
          term *= z / (jd + k + 1.0);
          sum += term;
          if (term < 1e-18 * sum) break;
        }
        out.mant[j] = std::pow(L, jd + 1.0) * std::exp(-z) * sum;
      }
    }
    return out;
  }

  // kappa < 0: int_0^1 e^{c t} t^j dt = sum_k c^k / (k! (j+k+1)), c = -z > 0, all positive.
  const double c = -z;
  if (c <= kDirectLimit) {
    for (std::size_t j = 0; j < count; ++j) {
      const double jd = static_cast<double>(j);
      double term = 1.0;
      double sum = 1.0 / (jd + 1.0);
      for (int k = 1; k < 100000; ++k) {
        term *= c / k;
        const double add = term / (jd + k + 1.0);
        sum += add;
        if (k > c && add < 1e-18 * sum) break;
      }
      out.mant[j] = std::pow(L, jd + 1.0) * sum;
    }
    return out;
  }
  out.log_scale = c;
  const int spread = static_cast<int>(40.0 * std::sqrt(c)) + 50;
  const int k_lo = std::max(0, static_cast<int>(c) - spread);
  const int k_hi = static_cast<int>(c) + spread;
  for (std::size_t j = 0; j < count; ++j) {
    const double jd = static_cast<double>(j);
    double sum = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) sum += poisson_weight(c, k) / (jd + k + 1.0);
    out.mant[j] = std::pow(L, jd + 1.0) * sum;
  }
  return out;
}

ExpMomentTable exp_moments(double kappa, double upper, int max_degree) {
  const ScaledMoments s = exp_moments_scaled(kappa, upper, max_degree);
  ExpMomentTable t{kappa, upper, {}};
  const double f = std::exp(s.log_scale);
  t.moments.reserve(s.mant.size());
  for (double m : s.mant) t.moments.push_back(m * f);
  return t;
}

Rational poly_integral_exact(const RationalPoly& p, const Rational& a, const Rational& b) {
  const RationalPoly prim = p.antiderivative();
  return prim(b) - prim(a);
}

Scaled exp_poly_integral_scaled(const RationalPoly& p, double kappa, double a, double b) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("exp_poly_integral: need finite a <= b");
  if (p.is_zero() || a == b) return {};
  const std::vector<double> q = p.shifted(from_double(a)).to_doubles();
  const ScaledMoments m = exp_moments_scaled(kappa, b - a, p.degree());
  double sum = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) sum += q[j] * m.mant[j];
  return {sum, m.log_scale - kappa * a};
}

double exp_poly_integral(const RationalPoly& p, double kappa, double a, double b) {
  if (kappa == 0.0) {
    if (!(a <= b)) throw std::invalid_argument("exp_poly_integral: need a <= b");
    return to_double(poly_integral_exact(p, from_double(a), from_double(b)));
  }
  return exp_poly_integral_scaled(p, kappa, a, b).value();
}

}  // namespace ksol
