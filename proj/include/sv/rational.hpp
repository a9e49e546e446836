#pragma once

// Exact arithmetic helpers: arbitrary precision integers and rationals,
// factorials, binomials, shifted products and small polynomial support.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "sv/errors.hpp"

namespace sv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) {
  using Dec = boost::multiprecision::cpp_dec_float_50;
  Dec v = Dec(numerator_of(r)) / Dec(denominator_of(r));
  return v.convert_to<double>();
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  if (denominator_of(r) == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Fifteen significant digits, the fixed rendering for reals at the CLI boundary.
inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Parses "3", "-3/4" or a plain decimal "0.125" exactly.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = detail::trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    BigInt d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    r = Rational(BigInt(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto ip = s.substr(0, dot);
    auto fp = s.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !detail::all_digits(ip)) ||
        (!fp.empty() && !detail::all_digits(fp)))
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fp.size()));
    BigInt whole = ip.empty() ? BigInt(0) : BigInt(std::string(ip));
    BigInt frac = fp.empty() ? BigInt(0) : BigInt(std::string(fp));
    r = Rational(whole * scale + frac, scale);
  } else {
    if (!detail::all_digits(s)) throw ParseError("malformed number '" + std::string(text) + "'");
    r = Rational(BigInt(std::string(s)));
  }
  return negative ? Rational(-r) : r;
}

inline BigInt factorial(long n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  BigInt f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Binomial coefficient with the usual extensions: zero for k < 0, zero for
/// 0 <= n < k, and the generalized value (-1)^k C(k-n-1, k) for n < 0.
inline BigInt binomial(long n, long k) {
  if (k < 0) return 0;
  if (n < 0) {
    BigInt v = binomial(k - n - 1, k);
    return (k % 2 == 0) ? v : BigInt(-v);
  }
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

/// x (x+1) ... (x+count-1); the empty product is one.
inline Rational rising_product(const Rational& x, long count) {
  Rational r = 1;
  for (long j = 0; j < count; ++j) r *= (x + j);
  return r;
}

inline Rational pow(const Rational& x, long e) {
  if (e < 0) return Rational(1) / pow(x, -e);
  Rational r = 1, b = x;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Rational floor_of(const Rational& x) {
  BigInt n = numerator_of(x), d = denominator_of(x);
  BigInt q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return Rational(q);
}

/// Dense univariate polynomial with exact coefficients, lowest degree first.
struct Polynomial {
  std::vector<Rational> coeffs;

  static Polynomial monomial(const Rational& c, std::size_t degree) {
    Polynomial p;
    p.coeffs.assign(degree + 1, Rational(0));
    p.coeffs[degree] = c;
    return p;
  }

  Rational operator()(const Rational& x) const {
    Rational r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
    return r;
  }

  double evaluate(double x) const {
    double r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + to_double(*it);
    return r;
  }

  Polynomial derivative() const {
    Polynomial d;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(coeffs[i] * Rational(static_cast<long>(i)));
    return d;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    if (a.coeffs.empty() || b.coeffs.empty()) return r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return r;
  }
};

/// c * pi^k with exact rational c. Enough to carry the torus constant and the
/// cusp volumes symbolically.
struct PiMonomial {
  Rational coefficient;
  int pi_power = 0;

  double value() const { return to_double(coefficient) * std::pow(M_PI, pi_power); }

  std::string to_string() const {
    std::string c = sv::to_string(coefficient);
    if (pi_power == 0) return c;
    std::string pi = std::abs(pi_power) == 1 ? "pi" : "pi^" + std::to_string(std::abs(pi_power));
    if (pi_power > 0) return (coefficient == 1 ? "" : c + "*") + pi;
    return c + "/" + pi;
  }

  friend PiMonomial operator*(const PiMonomial& a, const PiMonomial& b) {
    return {a.coefficient * b.coefficient, a.pi_power + b.pi_power};
  }
  friend PiMonomial operator/(const PiMonomial& a, const PiMonomial& b) {
    return {a.coefficient / b.coefficient, a.pi_power - b.pi_power};
  }
  friend bool operator==(const PiMonomial&, const PiMonomial&) = default;
};

}  // namespace sv
