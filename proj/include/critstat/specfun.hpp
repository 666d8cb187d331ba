#pragma once

// Real-order special functions: Riemann and Hurwitz zeta, the polylogarithm
// on activities a in (0, 1], the kernel F(x) = 1/x - 1/(e^x - 1), the
// integral c(gamma) of x^gamma F(x) and the gamma function.
//
// All functions are pure and reentrant.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "critstat/detail/numeric.hpp"
#include "critstat/errors.hpp"

namespace critstat {

namespace detail {

// B_{2j} / (2j)! for j = 1..13.
inline constexpr std::array<double, 13> kBernoulliOverFactorial = {
    0.08333333333333333, -0.001388888888888889, 3.306878306878307e-05, -8.267195767195768e-07,
    2.08767569878681e-08, -5.284190138687493e-10, 1.3382536530684679e-11, -3.3896802963225827e-13,
    8.586062056277845e-15, -2.174868698558062e-16, 5.5090028283602295e-18, -1.3954464685812522e-19,
    3.534707039629467e-21,
};

// Euler-Maclaurin evaluation of sum_{k>=0} (q + k)^{-s}, s > 1, q > 0.
inline double hurwitz_zeta_em(double s, double q) {
  const double shift_target = std::max(12.0, s + 4.0);
  double sum = 0.0;
  double w = q;
  while (w < shift_target) {
    sum += std::pow(w, -s);
    w += 1.0;
  }
  sum += std::pow(w, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(w, -s);
  // rising = s (s+1) ... (s + 2j - 2), power = w^{-s-2j+1}
  double rising = s;
  double power = std::pow(w, -s - 1.0);
  for (std::size_t j = 0; j < 11; ++j) {
    const double term = kBernoulliOverFactorial[j] * rising * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    rising *= (s + 2.0 * static_cast<double>(j) + 1.0) * (s + 2.0 * static_cast<double>(j) + 2.0);
    power /= w * w;
  }
  return sum;
}

// Dirichlet eta via Borwein's accelerated alternating series.
inline double dirichlet_eta(double s) {
  constexpr int n = 40;
  std::array<double, n + 1> d{};
  double t = 1.0 / n;  // (n+i-1)! 4^i / ((n-i)! (2i)!) at i = 0
  double acc = t;
  d[0] = n * acc;
  for (int i = 1; i <= n; ++i) {
    t *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
    acc += t;
    d[i] = n * acc;
  }
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * (d[k] - d[n]) / std::pow(k + 1.0, s);
  }
  return -sum / d[n];
}

// sin(pi x / 2) with the argument reduced exactly first.
inline double sin_half_pi(double x) {
  const double r = std::fmod(x, 4.0);
  if (r == 0.0 || r == 2.0 || r == -2.0) return 0.0;
  return std::sin(std::numbers::pi * r / 2.0);
}

// Zeta on the whole real line except s = 1 (functional equation for s < 0).
inline double zeta_continued(double s) {
  if (s == 1.0) throw DomainError("zeta has a pole at s = 1");
  if (s > 1.0) return hurwitz_zeta_em(s, 1.0);
  if (s > 0.0) return dirichlet_eta(s) / -std::expm1((1.0 - s) * std::numbers::ln2);
  if (s == 0.0) return -0.5;
  if (std::floor(s) == s && std::fmod(-s, 2.0) == 0.0) return 0.0;  // trivial zeros
  const double one_minus = 1.0 - s;
  return std::pow(2.0, s) * std::pow(std::numbers::pi, s - 1.0) * sin_half_pi(s) *
         std::tgamma(one_minus) * hurwitz_zeta_em(one_minus, 1.0);
}

inline double polylog_direct(double s, double a) {
  double sum = 0.0;
  double ak = 1.0;
  for (int k = 1; k < 100000; ++k) {
    ak *= a;
    const double term = ak * std::pow(static_cast<double>(k), -s);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// Expansion of Li_s(e^mu) around mu = 0, valid for |mu| < 2 pi.
inline double polylog_log_series_noninteger(double s, double mu) {
  double sum = std::tgamma(1.0 - s) * std::pow(-mu, s - 1.0);
  double mu_pow = 1.0;  // mu^k / k!
  for (int k = 0; k <= 40; ++k) {
    sum += zeta_continued(s - k) * mu_pow;
    mu_pow *= mu / (k + 1.0);
  }
  return sum;
}

inline double polylog_log_series_integer(int n, double mu) {
  double harmonic = 0.0;
  for (int j = 1; j < n; ++j) harmonic += 1.0 / j;
  double sum = 0.0;
  double mu_pow = 1.0;
  for (int k = 0; k <= 40; ++k) {
    if (k == n - 1) {
      sum += mu_pow * (harmonic - std::log(-mu));
    } else {
      sum += zeta_continued(static_cast<double>(n - k)) * mu_pow;
    }
    mu_pow *= mu / (k + 1.0);
  }
  return sum;
}

inline double polylog_log_series(double s, double mu) {
  constexpr double h = 1e-3;
  const double n = std::round(s);
  const double e = s - n;
  if (e == 0.0) return polylog_log_series_integer(static_cast<int>(n), mu);
  if (std::abs(e) >= h) return polylog_log_series_noninteger(s, mu);
  // Near an integer order the gamma pole and the zeta pole cancel. Interpolate
  // through nodes where the non-integer formula is well conditioned.
  const std::array<double, 5> nodes = {-2.0 * h, -h, 0.0, h, 2.0 * h};
  std::array<double, 5> values{};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    values[i] = nodes[i] == 0.0 ? polylog_log_series_integer(static_cast<int>(n), mu)
                                : polylog_log_series_noninteger(n + nodes[i], mu);
  }
  double result = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j != i) w *= (e - nodes[j]) / (nodes[i] - nodes[j]);
    }
    result += w * values[i];
  }
  return result;
}

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace detail

/// Riemann zeta for real s > 0, s != 1. Uses Euler-Maclaurin summation above 1
/// and the accelerated eta series on (0, 1).
inline double zeta(double s) {
  detail::require_finite(s, "zeta order");
  if (s <= 0.0) throw DomainError("zeta requires s > 0, got " + std::to_string(s));
  if (s == 1.0) throw DomainError("zeta has a pole at s = 1");
  return detail::zeta_continued(s);
}

/// Hurwitz zeta sum_{k>=0} (q + k)^{-s} for s > 1, q > 0.
inline double hurwitz_zeta(double s, double q) {
  detail::require_finite(s, "hurwitz order");
  if (s <= 1.0) throw DomainError("hurwitz_zeta requires s > 1");
  if (!(q > 0.0)) throw DomainError("hurwitz_zeta requires q > 0");
  return detail::hurwitz_zeta_em(s, q);
}

/// Polylogarithm Li_s(a) = sum a^k / k^s for s > 0 and activity a in [0, 1].
/// At a = 1 the series equals zeta(s) and needs s > 1.
inline double polylog(double s, double a) {
  detail::require_finite(s, "polylog order");
  if (!(s > 0.0)) throw DomainError("polylog requires order s > 0, got " + std::to_string(s));
  if (!(a >= 0.0 && a <= 1.0)) {
    throw DomainError("polylog activity must lie in [0, 1], got " + std::to_string(a));
  }
  if (a == 0.0) return 0.0;
  if (a == 1.0) {
    if (s <= 1.0) throw DomainError("polylog diverges at a = 1 for s <= 1");
    return detail::zeta_continued(s);
  }
  if (a <= 0.75) return detail::polylog_direct(s, a);
  return detail::polylog_log_series(s, std::log(a));
}

/// F(x) = 1/x - 1/(e^x - 1); F(0) = 1/2 by continuity.
inline double f_kernel(double x) {
  if (std::isnan(x) || x < 0.0) throw DomainError("f_kernel requires x >= 0");
  if (x < 0.5) {
    const double x2 = x * x;
    // 1/2 - sum_{n>=1} B_{2n} x^{2n-1} / (2n)!
    double odd = x;
    double series = 0.0;
    for (std::size_t j = 0; j < 7; ++j) {
      series += detail::kBernoulliOverFactorial[j] * odd;
      odd *= x2;
    }
    return 0.5 - series;
  }
  return 1.0 / x - 1.0 / std::expm1(x);
}

/// Gamma function for x > 0 (backed by std::tgamma).
inline double gamma_fn(double x) {
  detail::require_finite(x, "gamma argument");
  if (x <= 0.0) throw DomainError("gamma_fn requires x > 0, got " + std::to_string(x));
  return std::tgamma(x);
}

inline constexpr double kCGammaLowerLimit = -0.999;

/// c(gamma) = int_0^inf (1/x - 1/(e^x - 1)) x^gamma dx for gamma in (-1, 0),
/// by adaptive quadrature. Diverges as gamma -> -1; a RangeError is raised
/// below gamma = -0.999.
inline double c_gamma(double gamma) {
  detail::require_finite(gamma, "gamma");
  if (!(gamma > -1.0 && gamma < 0.0)) {
    throw DomainError("c_gamma requires gamma in (-1, 0), got " + std::to_string(gamma));
  }
  if (gamma < kCGammaLowerLimit) {
    throw RangeError("c_gamma diverges as gamma -> -1; refused below -0.999");
  }
  // On [0, 1] integrate the Bernoulli series of F term by term:
  //   int_0^1 x^gamma (1/2 - sum b_j x^{2j-1}) dx = 1/(2(1+gamma)) - sum b_j/(2j+gamma).
  double head = 0.5 / (1.0 + gamma);
  for (std::size_t j = 0; j < detail::kBernoulliOverFactorial.size(); ++j) {
    head -= detail::kBernoulliOverFactorial[j] / (2.0 * static_cast<double>(j + 1) + gamma);
  }
  const double body = detail::integrate(
      [&](double x) { return std::pow(x, gamma) * f_kernel(x); }, 1.0, 40.0);
  // Beyond 40 the exponential part is below 1e-17; keep its leading term.
  constexpr double cut = 40.0;
  const double tail = std::pow(cut, gamma) / -gamma - std::pow(cut, gamma) * std::exp(-cut);
  return head + body + tail;
}

}  // namespace critstat
