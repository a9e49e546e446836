#pragma once

// Numeric evaluation of the cusp and (s, t) integrals behind the
// Siegel-Veech ratios, compared against their closed forms.
//
// The (s, t) families live on the quarter disk s, t >= 0, s^2 + t^2 <= 1 and
// share the factor s^(2n-1) t^(2q+1) (s^2+t^2)/t^2; tau = t^2/(s^2+t^2):
//
//   jp     weight tau^p                                 B(n, q+p) / (4(n+q+1))
//   ix     restricted to tau >= x                       B(1-x; n, q) / (4(n+q+1))
//   iprime restricted to tau >= x, times (1-x/tau)^(q-1)
//                                                       (1-x)^(n+q-1) B(n, q) / (4(n+q+1))
//   corr   iprime at x2 = x + x1(1-x), divided by 1-x
//
// Two quadrature paths (Cartesian and polar) and one Monte Carlo path are
// provided. The Monte Carlo path does not use the (1-x/tau)^(q-1) factors:
// it samples the cylinder areas uniformly on the simplex and tests the area
// conditions directly.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sv/errors.hpp"
#include "sv/quadrature.hpp"
#include "sv/random.hpp"
#include "sv/rational.hpp"
#include "sv/special_fns.hpp"

namespace sv {

enum class IntegralFamily { Cusp, Jp, Ix, IPrime, Corr };

inline std::string to_string(IntegralFamily f) {
  switch (f) {
    case IntegralFamily::Cusp: return "cusp";
    case IntegralFamily::Jp: return "jp";
    case IntegralFamily::Ix: return "ix";
    case IntegralFamily::IPrime: return "iprime";
    case IntegralFamily::Corr: return "corr";
  }
  return "?";
}

inline IntegralFamily parse_integral_family(std::string_view s) {
  if (s == "cusp") return IntegralFamily::Cusp;
  if (s == "jp") return IntegralFamily::Jp;
  if (s == "ix") return IntegralFamily::Ix;
  if (s == "iprime") return IntegralFamily::IPrime;
  if (s == "corr") return IntegralFamily::Corr;
  throw ParseError("unknown integral family '" + std::string(s) + "'");
}

enum class OracleMethod { Quadrature, MonteCarlo };

inline std::string to_string(OracleMethod m) { return m == OracleMethod::Quadrature ? "quad" : "mc"; }

inline OracleMethod parse_oracle_method(std::string_view s) {
  if (s == "quad") return OracleMethod::Quadrature;
  if (s == "mc") return OracleMethod::MonteCarlo;
  throw ParseError("unknown method '" + std::string(s) + "' (expected quad or mc)");
}

struct SamplingPlan {
  OracleMethod method = OracleMethod::MonteCarlo;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::uint64_t strata = 64;
  double rel_tol = 1e-8;
};

struct McEstimate {
  double value = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct IntegralParams {
  IntegralFamily family = IntegralFamily::Jp;
  long n = 1;
  long q = 1;
  Rational p = 0;
  Rational x = 0;
  Rational x1 = 0;
  double eps = 1;
};

struct OracleComparison {
  IntegralParams params;
  OracleMethod method = OracleMethod::Quadrature;
  double numeric = 0;
  std::optional<McEstimate> mc;
  std::optional<double> polar;       // second quadrature path
  double closed_form = 0;
  std::string closed_form_exact;     // rational, or rational * pi * eps^2 for the cusp
  double relative_error = 0;
  std::optional<double> z_score;
  double rel_tol = 1e-8;
  bool passed = false;
};

namespace detail {

inline double dpow(double b, double e) { return e == 0 ? 1.0 : std::pow(b, e); }

inline void check_st_params(const IntegralParams& ip) {
  if (ip.n < 1 || ip.q < 1) throw DomainError("n and q must be >= 1");
  if (ip.p < 0) throw DomainError("p must be >= 0");
  if (ip.x < 0 || ip.x >= 1) throw DomainError("x must lie in [0, 1)");
  if (ip.x1 < 0 || ip.x1 >= 1) throw DomainError("x1 must lie in [0, 1)");
  if (ip.family == IntegralFamily::Corr && ip.q < 2) throw DomainError("the correlation integral needs q >= 2");
}

// x threshold of the integration domain tau >= x_dom
inline Rational domain_threshold(const IntegralParams& ip) {
  switch (ip.family) {
    case IntegralFamily::Ix:
    case IntegralFamily::IPrime: return ip.x;
    case IntegralFamily::Corr: return ip.x + ip.x1 * (Rational(1) - ip.x);
    default: return 0;
  }
}

// integrand of the (s, t) family at a point of its domain
inline double st_integrand(const IntegralParams& ip, double s, double t) {
  const double n = static_cast<double>(ip.n), q = static_cast<double>(ip.q);
  const double r2 = s * s + t * t;
  const double sn = dpow(s, 2 * n - 1);
  switch (ip.family) {
    case IntegralFamily::Jp: {
      // t^(2q+1) tau^(p-1) rewritten to stay finite at t = 0
      const double p = to_double(ip.p);
      return sn * dpow(t, 2 * q + 2 * p - 1) * dpow(r2, 1 - p);
    }
    case IntegralFamily::Ix: return sn * dpow(t, 2 * q - 1) * r2;
    case IntegralFamily::IPrime:
    case IntegralFamily::Corr: {
      const double xd = to_double(domain_threshold(ip));
      const double a = xd * r2 / (t * t);
      double v = sn * dpow(t, 2 * q - 1) * r2 * dpow(std::max(0.0, 1 - a), q - 1);
      if (ip.family == IntegralFamily::Corr) v /= 1 - to_double(ip.x);
      return v;
    }
    case IntegralFamily::Cusp: break;
  }
  throw DomainError("not an (s, t) family");
}

}  // namespace detail

/// Exact value of the (s, t) family.
inline Rational st_closed_form(const IntegralParams& ip) {
  detail::check_st_params(ip);
  const long n = ip.n, q = ip.q;
  const Rational four = Rational(4 * (n + q + 1));
  switch (ip.family) {
    case IntegralFamily::Jp: return Rational(factorial(n - 1)) / rising_product(ip.p + q, n) / four;
    case IntegralFamily::Ix: return incomplete_beta_exact(Rational(1) - ip.x, n, q) / four;
    case IntegralFamily::IPrime: return pow(Rational(1) - ip.x, n + q - 1) * beta_exact(n, q) / four;
    case IntegralFamily::Corr: {
      IntegralParams at_x2 = ip;
      at_x2.family = IntegralFamily::IPrime;
      at_x2.x = detail::domain_threshold(ip);
      return st_closed_form(at_x2) / (Rational(1) - ip.x);
    }
    case IntegralFamily::Cusp: break;
  }
  throw DomainError("not an (s, t) family");
}

/// Cartesian iterated integral: s outer, t inner. The outer variable is
/// s = s_max (1 - u^2), which removes the square-root behaviour of the
/// t-range at s = s_max.
inline QuadratureResult st_quadrature_cartesian(const IntegralParams& ip, double tol = kDefaultQuadTol) {
  detail::check_st_params(ip);
  const double xd = to_double(detail::domain_threshold(ip));
  const double s_max = std::sqrt(1 - xd);
  const double slope = std::sqrt(xd / (1 - xd));
  auto s_of = [s_max](double u) { return s_max * (1 - u * u); };
  return integrate_2d(
      [&](double u, double t) { return detail::st_integrand(ip, s_of(u), t) * 2 * s_max * u; }, 0.0, 1.0,
      [&](double u) { return slope * s_of(u); },
      [&](double u) {
        const double s = s_of(u);
        const double one_minus_s = (1 - s_max) + s_max * u * u;
        return std::sqrt(std::max(0.0, one_minus_s * (1 + s)));
      },
      tol);
}

/// Polar iterated integral: theta outer over [asin(sqrt(x)), pi/2], r inner.
inline QuadratureResult st_quadrature_polar(const IntegralParams& ip, double tol = kDefaultQuadTol) {
  detail::check_st_params(ip);
  const double xd = to_double(detail::domain_threshold(ip));
  const double theta0 = std::asin(std::sqrt(xd));
  return integrate_2d(
      [&](double theta, double r) {
        return detail::st_integrand(ip, r * std::cos(theta), r * std::sin(theta)) * r;
      },
      theta0, M_PI / 2, [](double) { return 0.0; }, [](double) { return 1.0; }, tol);
}

namespace detail {

inline void check_plan(const SamplingPlan& plan) {
  if (plan.strata < 1) throw SamplingPlanInvalid("at least one stratum is needed");
  if (plan.samples < 2 * plan.strata)
    throw SamplingPlanInvalid("need at least two samples per stratum (" + std::to_string(plan.samples) + " samples, " +
                              std::to_string(plan.strata) + " strata)");
  if (!(plan.rel_tol >= 0)) throw SamplingPlanInvalid("relative tolerance must be >= 0");
}

// Stratified estimate of the integral over [0, 1] x (unit volume) of
// sample(stratum_variable, rng), the stratum variable being uniform within
// each of plan.strata equal slices of [0, 1]. Stratum k draws from stream k.
template <class Sample>
McEstimate stratified_mc(const SamplingPlan& plan, Sample&& sample) {
  check_plan(plan);
  const std::uint64_t K = plan.strata;
  double total = 0, variance = 0;
  for (std::uint64_t k = 0; k < K; ++k) {
    const std::uint64_t nk = plan.samples / K + (k < plan.samples % K ? 1 : 0);
    CounterRng rng(plan.seed, k);
    double mean = 0, m2 = 0;
    for (std::uint64_t i = 0; i < nk; ++i) {
      const double z = (static_cast<double>(k) + rng.uniform01()) / static_cast<double>(K);
      const double v = sample(z, rng);
      const double delta = v - mean;
      mean += delta / static_cast<double>(i + 1);
      m2 += delta * (v - mean);
    }
    total += mean / static_cast<double>(K);
    variance += m2 / static_cast<double>(nk - 1) / static_cast<double>(nk) / static_cast<double>(K * K);
  }
  return {total, std::sqrt(variance), plan.samples, plan.seed};
}

// first two of q uniform simplex coordinates
inline std::pair<double, double> simplex_pair(long q, CounterRng& rng) {
  double e1 = rng.exponential(), e2 = q >= 2 ? rng.exponential() : 0.0, sum = e1 + e2;
  for (long i = 2; i < q; ++i) sum += rng.exponential();
  return {e1 / sum, e2 / sum};
}

inline OracleComparison compare(const IntegralParams& ip, OracleMethod method, double numeric, double closed,
                                std::string exact, double rel_tol, std::optional<McEstimate> mc,
                                std::optional<double> polar) {
  OracleComparison c;
  c.params = ip;
  c.method = method;
  c.numeric = numeric;
  c.mc = mc;
  c.polar = polar;
  c.closed_form = closed;
  c.closed_form_exact = std::move(exact);
  c.rel_tol = rel_tol;
  const double diff = std::abs(numeric - closed);
  c.relative_error = closed != 0 ? diff / std::abs(closed) : diff;
  const double sigma = mc ? mc->std_error : 0.0;
  if (mc && sigma > 0) c.z_score = (numeric - closed) / sigma;
  c.passed = diff <= std::max(3 * sigma, rel_tol * std::abs(closed));
  if (polar) {
    const double pdiff = std::abs(*polar - closed);
    c.passed = c.passed && pdiff <= rel_tol * std::abs(closed);
  }
  return c;
}

}  // namespace detail

/// Monte Carlo over the quarter disk, stratified along s.
inline McEstimate st_monte_carlo(const IntegralParams& ip, const SamplingPlan& plan) {
  detail::check_st_params(ip);
  const double n = static_cast<double>(ip.n), q = static_cast<double>(ip.q);
  const double p = to_double(ip.p), x = to_double(ip.x), x1 = to_double(ip.x1);
  return detail::stratified_mc(plan, [&](double s, CounterRng& rng) {
    const double t = rng.uniform01();
    // the simplex draw happens unconditionally so the stream layout does not
    // depend on where points land
    auto [a1, a2] = detail::simplex_pair(ip.q, rng);
    const double r2 = s * s + t * t;
    if (r2 > 1 || r2 == 0) return 0.0;
    const double tau = t * t / r2;
    const double base = detail::dpow(s, 2 * n - 1) * detail::dpow(t, 2 * q - 1) * r2;
    switch (ip.family) {
      case IntegralFamily::Jp: return base * detail::dpow(tau, p);
      case IntegralFamily::Ix: return tau >= x ? base : 0.0;
      case IntegralFamily::IPrime: return tau * a1 >= x ? base : 0.0;
      case IntegralFamily::Corr: {
        const double area1 = tau * a1, area2 = tau * a2;
        return (area1 >= x1 && area2 >= x * (1 - area1)) ? base : 0.0;
      }
      case IntegralFamily::Cusp: break;
    }
    return 0.0;
  });
}

/// Compares one (s, t) family against its closed form.
inline OracleComparison st_integral(const IntegralParams& ip, const SamplingPlan& plan) {
  const Rational exact = st_closed_form(ip);
  const double closed = to_double(exact);
  if (plan.method == OracleMethod::Quadrature) {
    double cart = st_quadrature_cartesian(ip).value;
    double pol = st_quadrature_polar(ip).value;
    return detail::compare(ip, plan.method, cart, closed, to_string(exact), plan.rel_tol, std::nullopt, pol);
  }
  McEstimate mc = st_monte_carlo(ip, plan);
  return detail::compare(ip, plan.method, mc.value, closed, to_string(exact), plan.rel_tol, mc, std::nullopt);
}

inline OracleComparison J_p_integral(long n, long q, const Rational& p, const SamplingPlan& plan) {
  return st_integral({IntegralFamily::Jp, n, q, p, 0, 0, 1}, plan);
}

inline OracleComparison I_x_integral(long n, long q, const Rational& x, const SamplingPlan& plan) {
  return st_integral({IntegralFamily::Ix, n, q, 0, x, 0, 1}, plan);
}

inline OracleComparison I_prime_integral(long n, long q, const Rational& x, const SamplingPlan& plan) {
  return st_integral({IntegralFamily::IPrime, n, q, 0, x, 0, 1}, plan);
}

inline OracleComparison correlation_integral(long n, long q, const Rational& x, const Rational& x1,
                                             const SamplingPlan& plan) {
  return st_integral({IntegralFamily::Corr, n, q, 0, x, x1, 1}, plan);
}

/// Numeric correlation integral divided by the numeric I'_{x1}, next to the
/// predicted (1-x)^(n+q-2).
struct CorrelationRatio {
  double numeric = 0;
  Rational predicted;
};

inline CorrelationRatio correlation_ratio_numeric(long n, long q, const Rational& x, const Rational& x1) {
  IntegralParams corr{IntegralFamily::Corr, n, q, 0, x, x1, 1};
  IntegralParams ip{IntegralFamily::IPrime, n, q, 0, x1, 0, 1};
  double v = st_quadrature_cartesian(corr).value / st_quadrature_cartesian(ip).value;
  return {v, pow(Rational(1) - x, n + q - 2)};
}

/// Exact value of the cusp integral without the eps^2 factor: 2 pi / ((p+1)...(p+q-1)).
inline PiMonomial cusp_closed_form(long q, const Rational& p) {
  if (q < 1) throw DomainError("cusp integral needs q >= 1");
  if (p < 0) throw DomainError("p must be >= 0");
  return {Rational(2) / rising_product(p + 1, q - 1), 1};
}

/// Cone integral over theta, w in (0, eps), h in (w/eps^2, 1/w), h1 in (0, h)
/// of w (h1/h)^p (h-h1)^(q-2)/(q-2)! w^q, times 2(q+1).
///
/// With v = wh and u = h1/h it becomes
///   2 pi int w dw int_{(w/eps)^2}^1 v^(q-1) dv int_0^1 u^p (1-u)^(q-2)/(q-2)! du,
/// sampled with w of density 2w/eps^2 (stratified) and v, u uniform.
inline McEstimate cusp_monte_carlo(long q, const Rational& p, double eps, const SamplingPlan& plan) {
  if (q < 1) throw DomainError("cusp integral needs q >= 1");
  if (p < 0) throw DomainError("p must be >= 0");
  if (!(eps > 0)) throw DomainError("eps must be > 0");
  const double pd = to_double(p);
  const double simplex_norm = q >= 2 ? to_double(Rational(factorial(q - 2))) : 1.0;
  const double scale = M_PI * eps * eps * 2.0 * static_cast<double>(q + 1);
  McEstimate est = detail::stratified_mc(plan, [&](double w_sq, CounterRng& rng) {
    // w_sq = (w/eps)^2 is uniform under the density 2w/eps^2
    const double v = rng.uniform01();
    const double u = rng.uniform01();
    if (v <= w_sq) return 0.0;
    double f = detail::dpow(v, static_cast<double>(q - 1));
    if (q >= 2) f *= detail::dpow(u, pd) * detail::dpow(1 - u, static_cast<double>(q - 2)) / simplex_norm;
    return f;
  });
  est.value *= scale;
  est.std_error *= scale;
  return est;
}

inline OracleComparison cusp_integral(long q, const Rational& p, double eps, const SamplingPlan& plan) {
  if (plan.method != OracleMethod::MonteCarlo)
    throw SamplingPlanInvalid("the cusp integral is evaluated by Monte Carlo only");
  PiMonomial cf = cusp_closed_form(q, p);
  const double closed = cf.value() * eps * eps;
  McEstimate mc = cusp_monte_carlo(q, p, eps, plan);
  IntegralParams ip{IntegralFamily::Cusp, 0, q, p, 0, 0, eps};
  return detail::compare(ip, plan.method, mc.value, closed, cf.to_string() + "*eps^2", plan.rel_tol, mc,
                         std::nullopt);
}

/// Dispatch on params.family.
inline OracleComparison evaluate_oracle(const IntegralParams& ip, const SamplingPlan& plan) {
  if (ip.family == IntegralFamily::Cusp) return cusp_integral(ip.q, ip.p, ip.eps, plan);
  return st_integral(ip, plan);
}

}  // namespace sv
