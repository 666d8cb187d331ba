#pragma once

// Shared numerical plumbing: adaptive quadrature, bracketing root finders,
// golden-section minimisation, least-squares line fits and an index-ordered
// parallel map.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "critstat/errors.hpp"

namespace critstat::detail {

inline constexpr double kQuadratureRelTol = 1e-11;

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

// Adaptive Gauss-Kronrod (7/15) over a finite interval, unchecked.
template <class F>
QuadratureResult integrate_raw(F&& f, double a, double b, double rel_tol) {
  if (a == b) return {};
  // Cells a few ulps wide: the midpoint rule is exact to rounding.
  if (std::abs(b - a) <= 1e-13 * std::max({1.0, std::abs(a), std::abs(b)})) {
    const double v = f(0.5 * (a + b)) * (b - a);
    return {v, 0.0, std::abs(v)};
  }
  QuadratureResult r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, rel_tol, &r.error, &r.l1);
  return r;
}

inline void check_quadrature(const QuadratureResult& r, double a, double b) {
  if (!std::isfinite(r.value)) {
    throw QuadratureError("quadrature produced a non-finite value on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
  }
  // Boost's estimate is pessimistic; only reject clearly unresolved integrals.
  if (r.l1 > 0.0 && r.error > 1e-7 * r.l1) {
    throw QuadratureError("quadrature did not converge on [" + std::to_string(a) + ", " + std::to_string(b) +
                          "]: error estimate " + std::to_string(r.error) + " against L1 norm " +
                          std::to_string(r.l1));
  }
}

template <class F>
double integrate(F&& f, double a, double b, double rel_tol = kQuadratureRelTol) {
  const auto r = integrate_raw(f, a, b, rel_tol);
  check_quadrature(r, a, b);
  return r.value;
}

// Sum of integrals over consecutive cells of `cuts` (sorted ascending). The
// convergence check applies to the total, so negligible cells may be rough.
template <class F>
double integrate_pieces(F&& f, std::span<const double> cuts, double rel_tol = kQuadratureRelTol) {
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto r = integrate_raw(f, cuts[i], cuts[i + 1], rel_tol);
    total.value += r.value;
    total.error += r.error;
    total.l1 += r.l1;
  }
  if (!cuts.empty()) check_quadrature(total, cuts.front(), cuts.back());
  return total.value;
}

inline bool opposite_signs(double fa, double fb) {
  return (fa <= 0.0 && fb >= 0.0) || (fa >= 0.0 && fb <= 0.0);
}

// Bisection on a sign-changing bracket. Stops when the bracket is narrower
// than xtol or the function vanishes exactly.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 1e-14, int max_iter = 400) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!opposite_signs(flo, fhi)) {
    throw NoRootError("bisection bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] has no sign change");
  }
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= xtol || mid == lo || mid == hi) return mid;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if (opposite_signs(flo, fmid)) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

// Uniform sign-change scan; returns every bracket [x_i, x_{i+1}] containing a root.
template <class F>
std::vector<std::pair<double, double>> scan_brackets(F&& f, std::span<const double> grid) {
  std::vector<std::pair<double, double>> out;
  if (grid.size() < 2) return out;
  double prev = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = f(grid[i]);
    if (prev == 0.0) {
      out.emplace_back(grid[i - 1], grid[i - 1]);
    } else if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
      out.emplace_back(grid[i - 1], grid[i]);
    }
    prev = cur;
  }
  if (prev == 0.0) out.emplace_back(grid.back(), grid.back());
  return out;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = b;
  return out;
}

inline std::vector<double> logspace(double a, double b, std::size_t n) {
  auto out = linspace(std::log10(a), std::log10(b), n);
  for (auto& v : out) v = std::pow(10.0, v);
  if (n > 0) {
    out.front() = a;
    out.back() = b;
  }
  return out;
}

struct Minimum {
  double x;
  double value;
};

template <class F>
Minimum golden_section_min(F&& f, double lo, double hi, double xtol = 1e-8) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > xtol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? Minimum{c, fc} : Minimum{d, fd};
}

struct LineFit {
  double slope;
  double intercept;
};

inline LineFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw FitError("line fit needs at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw FitError("line fit abscissae are all equal");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

// Evaluates fn(i) for i in [0, n) on up to `threads` workers. Results are
// stored by index, so the output never depends on scheduling.
template <class Fn>
auto parallel_map(std::size_t n, unsigned threads, Fn&& fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out(n);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::size_t first_error_index = std::numeric_limits<std::size_t>::max();
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        // Report the lowest failing index so the error is deterministic too.
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace critstat::detail
