#pragma once

// Globally adaptive Gauss-Kronrod (7/15 point) integration on finite
// intervals, with a nested helper for iterated double integrals.
//
// The 15-point rule comes from Boost; the driver keeps a heap of subintervals
// and bisects the one with the largest error estimate until the total error
// is below max(abs_tol, rel_tol * |value|).

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace sv {

struct QuadratureResult {
  double value = 0;
  double error = 0;
};

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr unsigned kDefaultQuadIntervals = 2000;

namespace detail {

struct QuadPiece {
  double a, b, value, error;
  bool operator<(const QuadPiece& o) const { return error < o.error; }
};

template <class F>
QuadPiece gk15(F& f, double a, double b) {
  double err = 0;
  // depth 0: a single rule application; the error comes back in [-1, 1] units
  double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err * (b - a) / 2};
}

}  // namespace detail

template <class F>
QuadratureResult integrate(F&& f, double a, double b, double rel_tol = kDefaultQuadTol, double abs_tol = 0,
                           unsigned max_intervals = kDefaultQuadIntervals) {
  if (!(b > a)) return {0.0, 0.0};
  std::priority_queue<detail::QuadPiece> heap;
  heap.push(detail::gk15(f, a, b));
  double value = heap.top().value, error = heap.top().error;
  while (heap.size() < max_intervals && error > std::max(abs_tol, rel_tol * std::abs(value))) {
    detail::QuadPiece worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    detail::QuadPiece left = detail::gk15(f, worst.a, mid), right = detail::gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // re-sum to drop the drift of the running updates
  value = 0;
  error = 0;
  for (; !heap.empty(); heap.pop()) {
    value += heap.top().value;
    error += heap.top().error;
  }
  return {value, error};
}

/// Integral over a <= s <= b, lo(s) <= t <= hi(s) of f(s, t), inner first.
/// Inner integrals get an absolute floor from a coarse estimate of the whole
/// integral, so near-empty slices do not chase their own rounding noise.
template <class F, class Lo, class Hi>
QuadratureResult integrate_2d(F&& f, double a, double b, Lo&& lo, Hi&& hi, double tol = kDefaultQuadTol) {
  auto inner_with = [&](double inner_abs, double& inner_err) {
    return [&, inner_abs](double s) {
      const double l = lo(s), h = hi(s);
      if (!(h > l)) return 0.0;
      auto r = integrate([&](double t) { return f(s, t); }, l, h, tol * 0.1, inner_abs);
      inner_err = std::max(inner_err, r.error);
      return r.value;
    };
  };
  double coarse_err = 0;
  const double coarse = integrate(inner_with(0.0, coarse_err), a, b, 1e-6, 0.0, 50).value;
  const double inner_abs = 0.1 * tol * std::abs(coarse) / (b - a);
  double inner_err = 0;
  auto r = integrate(inner_with(inner_abs, inner_err), a, b, tol);
  r.error += inner_err * (b - a);
  return r;
}

}  // namespace sv
