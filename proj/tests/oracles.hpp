#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_int;

// Walks every non-increasing sequence summing to `total` and tallies by length.
inline std::vector<std::uint64_t> enumerate_partitions(int total) {
  std::vector<std::uint64_t> by_parts(static_cast<std::size_t>(total) + 1, 0);
  std::function<void(int, int, int)> walk = [&](int left, int cap, int parts) {
    if (left == 0) {
      ++by_parts[static_cast<std::size_t>(parts)];
      return;
    }
    for (int next = std::min(left, cap); next >= 1; --next) walk(left - next, next, parts + 1);
  };
  walk(total, total, 0);
  return by_parts;
}

// Partitions of m with every part <= k, memoized. Exactly N parts of M is
// bounded_parts(M - N, N) by conjugation.
class BoundedParts {
 public:
  Big operator()(int m, int k) {
    if (m == 0) return 1;
    if (m < 0 || k <= 0) return 0;
    k = std::min(k, m);
    const auto key = std::make_pair(m, k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Big v = (*this)(m, k - 1) + (*this)(m - k, k);
    memo_.emplace(key, v);
    return v;
  }

 private:
  std::map<std::pair<int, int>, Big> memo_;
};

// Euler's pentagonal recurrence for p(n).
inline std::vector<Big> pentagonal_partitions(int n) {
  std::vector<Big> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Big acc = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > m) break;
      const bool plus = (k % 2) == 1;
      const Big term = p[static_cast<std::size_t>(m - g1)] + (g2 <= m ? p[static_cast<std::size_t>(m - g2)] : Big(0));
      if (plus) acc += term;
      else acc -= term;
    }
    p[static_cast<std::size_t>(m)] = acc;
  }
  return p;
}

inline double zeta(double s) { return boost::math::zeta(s); }

// -Gamma(1+g) zeta(1+g), valid for g in (-1, 0).
inline double c_gamma(double g) { return -boost::math::tgamma(1.0 + g) * boost::math::zeta(1.0 + g); }

// Direct power series, fine for a <= 0.95.
inline double polylog_series(double s, double a) {
  double sum = 0.0;
  double power = 1.0;
  for (int k = 1; k < 20000; ++k) {
    power *= a;
    const double term = power / std::pow(k, s);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// zeta(s) - Li_s(e^{-xi}) = sum_k (1 - e^{-k xi}) / k^s, a positive series.
// Past K the factor (1 - e^{-k xi}) is 1 to double precision; the rest of the
// sum is the Hurwitz tail, taken from Boost.
inline double zeta_gap(double s, double xi) {
  const long long cut = static_cast<long long>(std::ceil(40.0 / xi));
  double sum = 0.0;
  for (long long k = cut; k >= 1; --k) {
    sum += -std::expm1(-static_cast<double>(k) * xi) * std::pow(static_cast<double>(k), -s);
  }
  double head = 0.0;
  for (long long k = 1; k <= cut; ++k) head += std::pow(static_cast<double>(k), -s);
  return sum + (boost::math::zeta(s) - head);
}

// Number of positive integer triples with n1^2 + n2^2 + n3^2 <= r2.
inline long long lattice_octant_count(long long r2) {
  long long n = 0;
  for (long long a = 1; a * a <= r2; ++a) {
    for (long long b = 1; a * a + b * b <= r2; ++b) {
      const long long rest = r2 - a * a - b * b;
      auto c = static_cast<long long>(std::sqrt(static_cast<double>(rest)));
      while (c * c > rest) --c;
      while ((c + 1) * (c + 1) <= rest) ++c;
      n += c;
    }
  }
  return n;
}

// Mean over levels with occupation 1/(e^{a + b e} - 1); plain sums.
struct TwoLevel {
  double e1;
  double e2;
  double count(double a, double b) const { return 1.0 / std::expm1(a + b * e1) + 1.0 / std::expm1(a + b * e2); }
  double energy(double a, double b) const {
    return e1 / std::expm1(a + b * e1) + e2 / std::expm1(a + b * e2);
  }
};

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Outer bisection in b, inner in a, for the two-level spectrum.
inline std::pair<double, double> two_level_multipliers(const TwoLevel& s, double n, double e) {
  auto a_for = [&](double b) {
    const double floor = -b * s.e1;
    return bisect([&](double a) { return s.count(a, b) - n; }, floor + 1e-300 + 1e-15 * std::abs(floor), floor + 60.0);
  };
  const double b = bisect(
      [&](double b) {
        const double a = a_for(b);
        return s.energy(a, b) / s.count(a, b) - e / n;
      },
      1e-6, 200.0);
  return {a_for(b), b};
}

// Least-squares slope of y on x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle
