#pragma once

// Siegel-Veech constants and ratios in exact arithmetic. The configuration
// multiplicity M and the volume ratio are left as opaque symbols.

#include <string>
#include <vector>

#include "sv/errors.hpp"
#include "sv/rational.hpp"

namespace sv {

/// coefficient * M * volume_ratio
struct SymbolicSvConstant {
  std::string m_factor = "M";
  std::string volume_ratio = "Vol(H1(alpha'))/Vol(K)";
  Rational rational_coefficient;

  std::string to_string() const { return sv::to_string(rational_coefficient) + " * " + m_factor + " * " + volume_ratio; }

  double evaluate(double m, double vol_ratio) const { return to_double(rational_coefficient) * m * vol_ratio; }
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

inline void require_unit_interval(const Rational& x, bool allow_one = false) {
  require(x >= 0 && (allow_one ? x <= 1 : x < 1), "x must lie in [0, 1" + std::string(allow_one ? "]" : ")"));
}

}  // namespace detail

/// Area-weighted constant c^p_area: (n-1)! q / ((p+1)(p+2)...(p+q+n-1)).
inline SymbolicSvConstant svc_area_p(long n, long q, const Rational& p) {
  detail::require(n >= 1 && q >= 1, "svc_area_p needs n >= 1 and q >= 1");
  detail::require(p >= 0, "svc_area_p needs p >= 0");
  return {"M", "Vol(H1(alpha'))/Vol(K)",
          Rational(factorial(n - 1) * q) / rising_product(p + 1, q + n - 1)};
}

/// Cylinder counting constant: the p = 0 case.
inline SymbolicSvConstant svc_cyl(long n, long q) { return svc_area_p(n, q, 0); }

/// Area constant: the p = 1 case. Its volume denominator is written
/// Vol(H1(alpha)) rather than Vol(K), and is kept that way.
inline SymbolicSvConstant svc_area(long n, long q) {
  auto c = svc_area_p(n, q, 1);
  c.volume_ratio = "Vol(H1(alpha'))/Vol(H1(alpha))";
  return c;
}

/// Configuration counting constant: c_cyl / q.
inline SymbolicSvConstant svc_conf(long n, long q) {
  auto c = svc_cyl(n, q);
  c.rational_coefficient /= q;
  return c;
}

/// Area of the periodic region to the power p, per configuration.
inline SymbolicSvConstant svc_area_p_conf(long n, long q, const Rational& p) {
  detail::require(n >= 1 && q >= 1, "svc_area_p_conf needs n >= 1 and q >= 1");
  detail::require(p >= 0, "svc_area_p_conf needs p >= 0");
  return {"M", "Vol(H1(alpha'))/Vol(K)", Rational(factorial(n - 1)) / rising_product(p + q, n) / factorial(q - 1)};
}

/// Mean p-th power of the area of a cylinder: (d-2)! / ((p+1)...(p+d-2)).
inline Rational mean_area_p(long d, const Rational& p) {
  detail::require(d >= 3, "mean_area_p needs d >= 3");
  detail::require(p >= 0, "mean_area_p needs p >= 0");
  return Rational(factorial(d - 2)) / rising_product(p + 1, d - 2);
}

/// Mean p-th power of the area of the periodic region:
/// q(q+1)...(q+n-1) / ((p+q)(p+q+1)...(p+q+n-1)).
inline Rational area_p_conf_ratio(long n, long q, const Rational& p) {
  detail::require(n >= 1 && q >= 1, "area_p_conf_ratio needs n >= 1 and q >= 1");
  detail::require(p >= 0, "area_p_conf_ratio needs p >= 0");
  return rising_product(Rational(q), n) / rising_product(p + q, n);
}

/// Proportion of configurations whose first cylinder has area at least x.
inline Rational first_cyl_tail(long d, const Rational& x) {
  detail::require(d >= 3, "first_cyl_tail needs d >= 3");
  detail::require_unit_interval(x);
  return pow(Rational(1) - x, d - 2);
}

/// (1-x)^n sum_{k<q} C(n-1+k, k) x^k as a polynomial in x.
inline Polynomial region_tail_polynomial(long n, long q) {
  detail::require(n >= 1 && q >= 1, "region_tail needs n >= 1 and q >= 1");
  Polynomial one_minus_x{{Rational(1), Rational(-1)}};
  Polynomial lead{{Rational(1)}};
  for (long i = 0; i < n; ++i) lead = lead * one_minus_x;
  Polynomial sum;
  for (long k = 0; k < q; ++k) sum = sum + Polynomial::monomial(Rational(binomial(n - 1 + k, k)), k);
  return lead * sum;
}

/// Proportion of configurations whose q cylinders together fill at least x
/// of the area, I(1-x; n, q). The endpoint x = 1 is accepted and gives 0.
inline Rational region_tail(long n, long q, const Rational& x) {
  detail::require(n >= 1 && q >= 1, "region_tail needs n >= 1 and q >= 1");
  detail::require_unit_interval(x, true);
  Rational sum = 0;
  for (long k = 0; k < q; ++k) sum += Rational(binomial(n - 1 + k, k)) * pow(x, k);
  return pow(Rational(1) - x, n) * sum;
}

/// Leading coefficient of region_tail(n, q, x) / (1-x)^n as x -> 1.
inline Rational region_tail_asymptote(long n, long q) {
  detail::require(n >= 1 && q >= 1, "region_tail_asymptote needs n >= 1 and q >= 1");
  return Rational(binomial(n + q - 1, n));
}

/// Second cylinder takes at least x of what the first leaves: (1-x)^(d-3).
inline Rational correlation_ratio(long d, const Rational& x) {
  detail::require(d >= 4, "correlation_ratio needs d >= 4");
  detail::require_unit_interval(x);
  return pow(Rational(1) - x, d - 3);
}

/// Volume of a product of k boundary strata of complex dimensions n_i:
/// (1 / 2^(k-1)) * prod (n_i - 1)! / (n - 1)! * prod Vol_i.
struct VolumeProduct {
  Rational coefficient;
  std::vector<std::string> volumes;

  std::string to_string() const {
    std::string s = sv::to_string(coefficient);
    for (const auto& v : volumes) s += " * " + v;
    return s;
  }
};

inline Rational boundary_volume_coefficient(const std::vector<long>& dims) {
  detail::require(!dims.empty(), "boundary_volume_product needs at least one component");
  long n = 0;
  BigInt num = 1;
  for (long d : dims) {
    detail::require(d >= 1, "component dimensions must be >= 1");
    n += d;
    num *= factorial(d - 1);
  }
  BigInt den = factorial(n - 1) * (BigInt(1) << static_cast<unsigned>(dims.size() - 1));
  return Rational(num, den);
}

inline VolumeProduct boundary_volume_product(const std::vector<long>& dims, const std::vector<std::string>& volumes) {
  detail::require(dims.size() == volumes.size(), "one volume symbol per component");
  return {boundary_volume_coefficient(dims), volumes};
}

inline double boundary_volume_product(const std::vector<long>& dims, const std::vector<double>& volumes) {
  detail::require(dims.size() == volumes.size(), "one volume per component");
  double v = to_double(boundary_volume_coefficient(dims));
  for (double x : volumes) v *= x;
  return v;
}

/// Siegel-Veech constant of the torus assembled from its two ingredients:
/// cusp volume 2 pi eps^2 (eps factored out) over pi eps^2 times the moduli
/// volume pi^2 / 3.
struct TorusConstant {
  PiMonomial cusp_volume;   // coefficient of eps^2
  PiMonomial moduli_volume;
  PiMonomial value;
};

inline TorusConstant torus_constant() {
  PiMonomial cusp{Rational(2), 1};
  PiMonomial moduli{Rational(1, 3), 2};
  PiMonomial value = cusp / (PiMonomial{Rational(1), 1} * moduli);
  return {cusp, moduli, value};
}

}  // namespace sv
