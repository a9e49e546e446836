#pragma once

// Primitive lattice points in the disk of radius L: the cylinders of length at
// most L on the square torus. Both v and -v are counted.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sv/errors.hpp"
#include "sv/rational.hpp"

namespace sv {

struct LatticeCount {
  double radius = 0;
  std::int64_t count = 0;
  double density = 0;  // count / (pi L^2)
};

namespace detail {

inline std::int64_t isqrt(std::int64_t v) {
  if (v <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// smallest prime factor of every integer up to n
inline std::vector<std::int32_t> spf_sieve(std::int64_t n) {
  std::vector<std::int32_t> spf(static_cast<std::size_t>(n + 1), 0);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf[static_cast<std::size_t>(i)] != 0) continue;
    for (std::int64_t j = i; j <= n; j += i)
      if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(i);
  }
  return spf;
}

// #{1 <= y <= m : gcd(x, y) = 1} by inclusion-exclusion over the prime factors of x
inline std::int64_t coprime_up_to(std::int64_t x, std::int64_t m, const std::vector<std::int32_t>& spf) {
  if (m <= 0) return 0;
  std::int32_t primes[16];
  int np = 0;
  for (std::int64_t v = x; v > 1;) {
    std::int32_t p = spf[static_cast<std::size_t>(v)];
    primes[np++] = p;
    while (v % p == 0) v /= p;
  }
  std::int64_t total = 0;
  for (std::uint32_t mask = 0; mask < (1u << np); ++mask) {
    std::int64_t d = 1;
    int bits = 0;
    for (int i = 0; i < np; ++i)
      if (mask & (1u << i)) {
        d *= primes[i];
        ++bits;
      }
    total += (bits % 2 == 0 ? 1 : -1) * (m / d);
  }
  return total;
}

}  // namespace detail

/// Exact count of (p, q) != (0, 0) with gcd(|p|, |q|) = 1 and p^2 + q^2 <= L^2.
/// Rows are handled one at a time, so memory is O(L).
inline LatticeCount count_primitive(double L) {
  if (!(L >= 1)) throw DomainError("count_primitive needs L >= 1");
  const auto rows = static_cast<std::int64_t>(std::floor(L));
  const bool integral = static_cast<double>(rows) == L;
  const std::int64_t L2 = rows * rows;
  auto spf = detail::spf_sieve(rows);
  // axis points (+-1, 0), (0, +-1), plus four copies of the open quadrant
  std::int64_t quadrant = 1;
  for (std::int64_t x = 1; x <= rows; ++x) {
    std::int64_t ymax;
    if (integral) {
      ymax = detail::isqrt(L2 - x * x);
    } else {
      ymax = static_cast<std::int64_t>(std::floor(std::sqrt(L * L - static_cast<double>(x * x))));
    }
    quadrant += detail::coprime_up_to(x, ymax, spf);
  }
  LatticeCount c;
  c.radius = L;
  c.count = 4 * quadrant;
  c.density = static_cast<double>(c.count) / (M_PI * L * L);
  return c;
}

/// Direct double loop over the square [-L, L]^2; test oracle for count_primitive.
inline std::int64_t count_primitive_brute(std::int64_t L) {
  std::int64_t count = 0;
  for (std::int64_t p = -L; p <= L; ++p)
    for (std::int64_t q = -L; q <= L; ++q) {
      if (p == 0 && q == 0) continue;
      if (p * p + q * q > L * L) continue;
      std::int64_t a = p < 0 ? -p : p, b = q < 0 ? -q : q;
      while (b != 0) {
        std::int64_t r = a % b;
        a = b;
        b = r;
      }
      if (a == 1) ++count;
    }
  return count;
}

struct ConvergenceRow {
  LatticeCount lattice;
  double deviation = 0;  // density - 6/pi^2
};

inline double six_over_pi_squared() { return 6.0 / (M_PI * M_PI); }

/// One row per radius; radii must be ascending and positive.
inline std::vector<ConvergenceRow> convergence_table(const std::vector<double>& radii) {
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("radii must be strictly ascending");
    LatticeCount c = count_primitive(radii[i]);
    rows.push_back({c, c.density - six_over_pi_squared()});
  }
  return rows;
}

inline std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "L,count,density,deviation\n";
  for (const auto& r : rows)
    out += format_real(r.lattice.radius) + "," + std::to_string(r.lattice.count) + "," +
           format_real(r.lattice.density) + "," + format_real(r.deviation) + "\n";
  return out;
}

}  // namespace sv
