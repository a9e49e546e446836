#pragma once

// Beta and incomplete Beta functions (exact at positive integers, adaptive
// quadrature otherwise) and exhaustive checkers for the binomial identities
// behind the incomplete Beta expansion.

#include <cmath>
#include <string>
#include <vector>

#include "sv/errors.hpp"
#include "sv/quadrature.hpp"
#include "sv/rational.hpp"

namespace sv {

/// B(n, m) = (n-1)! (m-1)! / (n+m-1)!
inline Rational beta_exact(long n, long m) {
  if (n < 1 || m < 1) throw DomainError("beta_exact needs positive integer arguments");
  return Rational(factorial(n - 1) * factorial(m - 1), factorial(n + m - 1));
}

/// B(t; a, b) for integer a, b >= 1 through
///   B(t; a, b) = B(a, b) * sum_{k=a}^{a+b-1} C(a+b-1, k) t^k (1-t)^(a+b-1-k).
inline Rational incomplete_beta_exact(const Rational& t, long a, long b) {
  if (a < 1 || b < 1) throw DomainError("incomplete_beta_exact needs positive integer a, b");
  if (t < 0 || t > 1) throw DomainError("incomplete Beta argument t must lie in [0, 1]");
  const long N = a + b - 1;
  Rational sum = 0;
  for (long k = a; k <= N; ++k) sum += Rational(binomial(N, k)) * pow(t, k) * pow(Rational(1) - t, N - k);
  return beta_exact(a, b) * sum;
}

/// Second exact route: expand (1-u)^(b-1) and integrate term by term,
///   B(t; a, b) = sum_j (-1)^j C(b-1, j) t^(a+j) / (a+j).
inline Rational incomplete_beta_termwise(const Rational& t, long a, long b) {
  if (a < 1 || b < 1) throw DomainError("incomplete_beta_termwise needs positive integer a, b");
  Rational sum = 0;
  for (long j = 0; j < b; ++j) {
    Rational term = Rational(binomial(b - 1, j)) * pow(t, a + j) / Rational(a + j);
    sum += (j % 2 == 0) ? term : Rational(-term);
  }
  return sum;
}

inline Rational regularized_incomplete_beta_exact(const Rational& t, long a, long b) {
  return incomplete_beta_exact(t, a, b) / beta_exact(a, b);
}

namespace detail {

inline void check_beta_args(double t, double a, double b) {
  if (!(a > 0) || !(b > 0)) throw DomainError("incomplete Beta needs a > 0 and b > 0");
  if (!(t >= 0 && t <= 1)) throw DomainError("incomplete Beta argument t must lie in [0, 1]");
}

// integral of u^(a-1) (1-u)^(b-1) over [lo, hi] with lo >= 0, hi <= 1/2 or
// lo >= 1/2 handled separately by the caller
inline double beta_left_piece(double hi, double a, double b) {
  if (hi <= 0) return 0;
  if (a < 1) {
    // u = v^(1/a) removes the u^(a-1) singularity
    auto f = [a, b](double v) { return std::pow(1 - std::pow(v, 1 / a), b - 1) / a; };
    return integrate(f, 0.0, std::pow(hi, a)).value;
  }
  auto f = [a, b](double u) { return std::pow(u, a - 1) * std::pow(1 - u, b - 1); };
  return integrate(f, 0.0, hi).value;
}

inline double beta_right_piece(double lo, double hi, double a, double b) {
  if (hi <= lo) return 0;
  if (b < 1) {
    // 1 - u = w^(1/b)
    auto f = [a, b](double w) { return std::pow(1 - std::pow(w, 1 / b), a - 1) / b; };
    return integrate(f, std::pow(1 - hi, b), std::pow(1 - lo, b)).value;
  }
  auto f = [a, b](double u) { return std::pow(u, a - 1) * std::pow(1 - u, b - 1); };
  return integrate(f, lo, hi).value;
}

}  // namespace detail

/// B(t; a, b) = integral_0^t u^(a-1) (1-u)^(b-1) du by adaptive quadrature.
inline double incomplete_beta(double t, double a, double b) {
  detail::check_beta_args(t, a, b);
  if (t <= 0.5) return detail::beta_left_piece(t, a, b);
  return detail::beta_left_piece(0.5, a, b) + detail::beta_right_piece(0.5, t, a, b);
}

inline double beta(double a, double b) { return incomplete_beta(1.0, a, b); }

inline double regularized_incomplete_beta(double t, double a, double b) {
  return incomplete_beta(t, a, b) / beta(a, b);
}

// ---------------------------------------------------------------------------
// Identity checkers

struct IdentityReport {
  std::string name;
  long checked = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// For 1 <= A <= a_max, 0 <= B <= b_max:
///   sum_{k>=0} (-1)^k C(A+B, A+k)         = C(A+B-1, B)
///   sum_{k>=0} k (-1)^(k+1) C(A+B, A+k)   = C(A+B-2, B-1)
inline IdentityReport verify_combi1(long a_max, long b_max) {
  if (a_max < 1 || b_max < 0) throw DomainError("verify_combi1 needs A_max >= 1 and B_max >= 0");
  IdentityReport rep{"combi1", 0, {}};
  for (long A = 1; A <= a_max; ++A) {
    for (long B = 0; B <= b_max; ++B) {
      BigInt alt = 0, weighted = 0;
      for (long k = 0; k <= B; ++k) {
        BigInt c = binomial(A + B, A + k);
        alt += (k % 2 == 0) ? c : BigInt(-c);
        weighted += (k % 2 == 1) ? BigInt(k * c) : BigInt(-k * c);
      }
      ++rep.checked;
      if (alt != binomial(A + B - 1, B))
        rep.failures.push_back("alternating sum A=" + std::to_string(A) + " B=" + std::to_string(B));
      ++rep.checked;
      if (weighted != binomial(A + B - 2, B - 1))
        rep.failures.push_back("weighted sum A=" + std::to_string(A) + " B=" + std::to_string(B));
    }
  }
  return rep;
}

/// For 1 <= n <= n_max, 0 <= l <= q <= q_max:
///   sum_{k=0}^{q+1} C(n+q+1, n+k) C(k, q+1-l) (-1)^(l+k+q+1) = C(n+l-1, l)
inline IdentityReport verify_combi2(long n_max, long q_max) {
  if (n_max < 1 || q_max < 0) throw DomainError("verify_combi2 needs n_max >= 1 and q_max >= 0");
  IdentityReport rep{"combi2", 0, {}};
  for (long n = 1; n <= n_max; ++n) {
    for (long q = 0; q <= q_max; ++q) {
      for (long l = 0; l <= q; ++l) {
        BigInt sum = 0;
        for (long k = 0; k <= q + 1; ++k) {
          BigInt term = binomial(n + q + 1, n + k) * binomial(k, q + 1 - l);
          sum += ((l + k + q + 1) % 2 == 0) ? term : BigInt(-term);
        }
        ++rep.checked;
        if (sum != binomial(n + l - 1, l))
          rep.failures.push_back("n=" + std::to_string(n) + " q=" + std::to_string(q) + " l=" + std::to_string(l));
      }
    }
  }
  return rep;
}

/// B(1-x; n, q) = (1-x)^n B(n, q) sum_{l=0}^{q-1} C(n+l-1, l) x^l, exactly on
/// the given rational grid, for 1 <= n <= n_max, 1 <= q <= q_max.
inline IdentityReport verify_combi4(long n_max, long q_max, const std::vector<Rational>& grid) {
  if (n_max < 1 || q_max < 1) throw DomainError("verify_combi4 needs n_max >= 1 and q_max >= 1");
  for (const auto& x : grid)
    if (x < 0 || x >= 1) throw DomainError("verify_combi4 grid points must lie in [0, 1)");
  IdentityReport rep{"combi4", 0, {}};
  for (long n = 1; n <= n_max; ++n) {
    for (long q = 1; q <= q_max; ++q) {
      for (const auto& x : grid) {
        Rational lhs = incomplete_beta_exact(Rational(1) - x, n, q);
        Rational sum = 0;
        for (long l = 0; l < q; ++l) sum += Rational(binomial(n + l - 1, l)) * pow(x, l);
        Rational rhs = pow(Rational(1) - x, n) * beta_exact(n, q) * sum;
        ++rep.checked;
        if (lhs != rhs)
          rep.failures.push_back("n=" + std::to_string(n) + " q=" + std::to_string(q) + " x=" + to_string(x));
      }
    }
  }
  return rep;
}

/// k/(points) for k = 0 .. points-1: evenly spaced rationals in [0, 1).
inline std::vector<Rational> unit_grid(long points) {
  std::vector<Rational> g;
  for (long k = 0; k < points; ++k) g.emplace_back(k, points);
  return g;
}

}  // namespace sv
