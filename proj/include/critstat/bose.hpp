#pragma once

// Bose-Einstein occupation statistics over discrete level spectra, the
// Lagrange-multiplier inversion (N, E) -> (a, b), Weyl/Courant state counting
// and the finite-occupancy (parastatistical) sum-integral relations.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "critstat/detail/numeric.hpp"
#include "critstat/errors.hpp"
#include "critstat/specfun.hpp"

namespace critstat {

struct Level {
  double energy;
  double degeneracy;  // may be fractional
};

/// Energy levels with degeneracies. Either an explicit, complete list or the
/// basis series eps_i = i^{D/2} (G_i = 1) truncated at a declared index.
class LevelSpectrum {
 public:
  static LevelSpectrum explicit_levels(std::vector<Level> levels) {
    if (levels.empty()) throw ArgumentError("spectrum needs at least one level");
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (!(levels[i].energy > 0.0) || !std::isfinite(levels[i].energy)) {
        throw ArgumentError("level energies must be positive");
      }
      if (!(levels[i].degeneracy > 0.0) || !std::isfinite(levels[i].degeneracy)) {
        throw ArgumentError("level degeneracies must be positive");
      }
      if (i > 0 && !(levels[i].energy > levels[i - 1].energy)) {
        throw ArgumentError("level energies must be strictly increasing");
      }
    }
    return LevelSpectrum(std::move(levels), std::nullopt);
  }

  static LevelSpectrum basis_series(double dimension, std::size_t truncation) {
    if (!(dimension > 0.0)) throw ArgumentError("basis series dimension must be positive");
    if (truncation < 1) throw ArgumentError("basis series truncation must be >= 1");
    const double exponent = dimension / 2.0;
    std::vector<Level> levels(truncation);
    for (std::size_t i = 0; i < truncation; ++i) {
      levels[i] = {std::pow(static_cast<double>(i + 1), exponent), 1.0};
    }
    return LevelSpectrum(std::move(levels), exponent);
  }

  std::span<const Level> levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  double ground_energy() const { return levels_.front().energy; }

  /// True for explicit spectra; basis series stand for an infinite sum.
  bool complete() const { return !exponent_.has_value(); }
  std::optional<double> basis_exponent() const { return exponent_; }

 private:
  LevelSpectrum(std::vector<Level> levels, std::optional<double> exponent)
      : levels_(std::move(levels)), exponent_(exponent) {}

  std::vector<Level> levels_;
  std::optional<double> exponent_;
};

/// a = -mu/T, b = 1/T.
struct Multipliers {
  double a;
  double b;
};

struct MacroState {
  double N;
  double E;
  std::size_t levels_used = 0;
};

inline constexpr double kLevelSumTolerance = 1e-12;

namespace detail {

// int_K^inf x^q exp(-c x^p) dx.
inline double power_exp_tail(double q, double p, double c, double from) {
  const double shape = (q + 1.0) / p;
  return boost::math::tgamma(shape, c * std::pow(from, p)) * std::pow(c, -shape) / p;
}

struct LevelMoments {
  double n = 0.0;       // sum G n
  double e = 0.0;       // sum G eps n
  double dn = 0.0;      // sum G w,        w = n (1 + n)
  double de = 0.0;      // sum G eps w
  double de2 = 0.0;     // sum G eps^2 w
  std::size_t used = 0;
};

inline LevelMoments level_moments(const LevelSpectrum& spectrum, const Multipliers& m) {
  if (!(m.b > 0.0)) throw ArgumentError("multiplier b must be positive");
  if (!(m.a + m.b * spectrum.ground_energy() > 0.0)) {
    throw DivergenceError("occupation diverges: a + b eps_1 <= 0");
  }
  LevelMoments out;
  const auto levels = spectrum.levels();
  const auto exponent = spectrum.basis_exponent();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& lv = levels[i];
    const double z = m.a + m.b * lv.energy;
    const double occ = 1.0 / std::expm1(z);
    const double w = occ * (1.0 + occ);
    out.n += lv.degeneracy * occ;
    out.e += lv.degeneracy * lv.energy * occ;
    out.dn += lv.degeneracy * w;
    out.de += lv.degeneracy * lv.energy * w;
    out.de2 += lv.degeneracy * lv.energy * lv.energy * w;
    out.used = i + 1;
    if (!exponent) continue;
    // Basis series: stop once the Boltzmann majorant of the tail is negligible.
    const double from = static_cast<double>(i + 1);
    if (m.b * lv.energy < 1.0 || lv.energy * occ > kLevelSumTolerance * out.e) continue;
    const double prefactor = std::exp(-m.a) / -std::expm1(-z);
    const double e_tail = prefactor * power_exp_tail(*exponent, *exponent, m.b, from);
    const double n_tail = prefactor * power_exp_tail(0.0, *exponent, m.b, from);
    if (e_tail <= kLevelSumTolerance * out.e && n_tail <= kLevelSumTolerance * out.n) return out;
  }
  if (exponent) {
    throw TruncationError("basis series truncated at " + std::to_string(levels.size()) +
                          " levels is too short for the requested tolerance");
  }
  return out;
}

}  // namespace detail

/// Mean occupation 1 / (e^{a + b eps} - 1).
inline double occupation(double energy, const Multipliers& m) {
  const double z = m.a + m.b * energy;
  if (!(z > 0.0)) throw DivergenceError("occupation diverges: a + b eps <= 0");
  return 1.0 / std::expm1(z);
}

/// Nonequilibrium Bose entropy sum G [(1+n) ln(1+n) - n ln n].
inline double entropy_noneq(const LevelSpectrum& spectrum, std::span<const double> occupations) {
  if (occupations.size() != spectrum.size()) {
    throw ArgumentError("one occupation per level is required");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < occupations.size(); ++i) {
    const double n = occupations[i];
    if (!(n >= 0.0)) throw ArgumentError("occupations must be nonnegative");
    if (n == 0.0) continue;
    s += spectrum.levels()[i].degeneracy * ((1.0 + n) * std::log1p(n) - n * std::log(n));
  }
  return s;
}

inline MacroState macro_from_multipliers(const LevelSpectrum& spectrum, const Multipliers& m) {
  const auto mom = detail::level_moments(spectrum, m);
  return {mom.n, mom.e, mom.used};
}

namespace detail {

struct LogResidual {
  double rn;
  double re;
  double norm() const { return std::max(std::abs(rn), std::abs(re)); }
};

inline LogResidual log_residual(const LevelMoments& mom, const MacroState& target) {
  return {std::log(mom.n / target.N), std::log(mom.e / target.E)};
}

inline std::optional<Multipliers> newton_multipliers(const LevelSpectrum& spectrum,
                                                     const MacroState& target, Multipliers start) {
  // Unknowns (a, beta = ln b); residuals are log-ratios of N and E.
  double a = start.a;
  double beta = std::log(start.b);
  auto mom = level_moments(spectrum, {a, std::exp(beta)});
  auto res = log_residual(mom, target);
  for (int it = 0; it < 200; ++it) {
    if (res.norm() < 1e-14) return Multipliers{a, std::exp(beta)};
    const double b = std::exp(beta);
    const double j11 = -mom.dn / mom.n;
    const double j12 = -b * mom.de / mom.n;
    const double j21 = -mom.de / mom.e;
    const double j22 = -b * mom.de2 / mom.e;
    const double det = j11 * j22 - j12 * j21;
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) return std::nullopt;
    const double da = -(j22 * res.rn - j12 * res.re) / det;
    const double dbeta = -(-j21 * res.rn + j11 * res.re) / det;
    double lambda = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 40; ++ls, lambda *= 0.5) {
      double a_new = a + lambda * da;
      if (a_new < 0.0) a_new = 0.5 * a;  // stay in the a >= 0 half plane
      const double beta_new = beta + lambda * dbeta;
      const Multipliers trial{a_new, std::exp(beta_new)};
      if (!(trial.a + trial.b * spectrum.ground_energy() > 0.0)) continue;
      try {
        const auto mom_new = level_moments(spectrum, trial);
        const auto res_new = log_residual(mom_new, target);
        if (std::isfinite(res_new.norm()) && res_new.norm() < res.norm()) {
          a = a_new;
          beta = beta_new;
          mom = mom_new;
          res = res_new;
          improved = true;
          break;
        }
      } catch (const TruncationError&) {
        continue;
      }
    }
    if (!improved) break;
  }
  if (res.norm() < 1e-11) return Multipliers{a, std::exp(beta)};
  return std::nullopt;
}

// a(b) with N(a, b) = target N, or nullopt when even a = 0 holds too few particles.
inline std::optional<double> activity_for_count(const LevelSpectrum& spectrum, double b, double count) {
  const double floor_a = std::max(0.0, -b * spectrum.ground_energy());
  if (level_moments(spectrum, {floor_a, b}).n < count) return std::nullopt;
  double hi = 1.0;
  while (level_moments(spectrum, {hi, b}).n > count) {
    hi *= 2.0;
    if (hi > 1e6) throw ConvergenceError("activity bracket escaped");
  }
  return bisect([&](double a) { return std::log(level_moments(spectrum, {a, b}).n / count); }, floor_a,
                hi, 1e-15);
}

inline std::optional<Multipliers> nested_bisection_multipliers(const LevelSpectrum& spectrum,
                                                               const MacroState& target) {
  // E(a(b), b) decreases in b; a(b) ceases to exist (a < 0) once b is too large.
  auto energy_gap = [&](double beta) -> std::optional<double> {
    const double b = std::exp(beta);
    const auto a = activity_for_count(spectrum, b, target.N);
    if (!a) return std::nullopt;
    return std::log(level_moments(spectrum, {*a, b}).e / target.E);
  };
  double lo = -5.0;
  for (;;) {
    const auto g = energy_gap(lo);
    if (g && *g > 0.0) break;
    lo -= 5.0;
    if (lo < -60.0) return std::nullopt;
  }
  double hi = lo + 1.0;
  for (;;) {
    const auto g = energy_gap(hi);
    if (!g) {
      // Past the point where a = 0 holds exactly N. The root must lie before it.
      const double edge = bisect(
          [&](double x) {
            const double b = std::exp(x);
            return std::log(level_moments(spectrum, {std::max(0.0, -b * spectrum.ground_energy()), b}).n /
                            target.N);
          },
          lo, hi, 1e-15);
      const auto g_edge = energy_gap(edge);
      if (!g_edge || *g_edge > 0.0) return std::nullopt;  // condensed, infeasible
      hi = edge;
      break;
    }
    if (*g < 0.0) break;
    lo = hi;
    hi += 1.0;
    if (hi > 60.0) return std::nullopt;
  }
  const double beta = bisect([&](double x) { return *energy_gap(x); }, lo, hi, 1e-15);
  const double b = std::exp(beta);
  return Multipliers{*activity_for_count(spectrum, b, target.N), b};
}

}  // namespace detail

/// Inverts (a, b) -> (N, E). Damped Newton in (a, ln b) with a
/// nested-bisection fallback; the root is unique by monotonicity.
inline Multipliers solve_multipliers(const LevelSpectrum& spectrum, const MacroState& target) {
  if (!(target.N > 0.0) || !(target.E > 0.0)) throw ArgumentError("target N and E must be positive");
  const double mean = target.E / target.N;
  const double eps1 = spectrum.ground_energy();
  if (mean <= eps1 * (1.0 + 1e-9)) {
    throw InfeasibleError("target mean energy is at the ground-state floor; multipliers are ill-conditioned");
  }
  if (spectrum.complete()) {
    double g = 0.0;
    double ge = 0.0;
    for (const auto& lv : spectrum.levels()) {
      g += lv.degeneracy;
      ge += lv.degeneracy * lv.energy;
    }
    if (mean >= (ge / g) * (1.0 - 1e-12)) {
      throw InfeasibleError("target mean energy exceeds the infinite-temperature mean of the spectrum");
    }
  }

  // Start from a Boltzmann-like temperature and the matching activity.
  double b0 = 1.0 / std::max(mean - eps1, 1e-3 * eps1);
  std::optional<Multipliers> result;
  for (int attempt = 0; attempt < 30 && !result; ++attempt, b0 *= 0.5) {
    if (const auto a0 = detail::activity_for_count(spectrum, b0, target.N)) {
      result = detail::newton_multipliers(spectrum, target, {*a0, b0});
      break;
    }
  }
  if (!result) result = detail::nested_bisection_multipliers(spectrum, target);
  if (!result) throw InfeasibleError("no multipliers with a >= 0, b > 0 reproduce the target");
  if (result->a < 0.0) throw InfeasibleError("target requires a negative multiplier a");
  const auto check = macro_from_multipliers(spectrum, *result);
  if (std::abs(check.N / target.N - 1.0) > 1e-9 || std::abs(check.E / target.E - 1.0) > 1e-9) {
    throw ConvergenceError("multiplier solve did not reach the target within 1e-9");
  }
  return *result;
}

namespace detail {
inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError(std::string(what) + " must be positive");
}
}  // namespace detail

/// Number of one-particle states with energy below lambda (Weyl asymptotics).
inline double courant_density(double lambda, double volume, double mass, int dimension, double hbar) {
  if (!(lambda >= 0.0)) throw ArgumentError("lambda must be nonnegative");
  detail::require_positive(volume, "volume");
  detail::require_positive(mass, "mass");
  detail::require_positive(hbar, "hbar");
  if (dimension < 1) throw ArgumentError("dimension must be >= 1");
  const double half_d = dimension / 2.0;
  return volume * std::pow(mass * lambda, half_d) /
         (gamma_fn(half_d + 1.0) * std::pow(2.0 * std::numbers::pi, half_d) * std::pow(hbar, dimension));
}

/// Phase-space cells of size (2 pi hbar)^D in a box dp x dq.
inline double weyl_cell_count(double dp, double dq, int dimension, double hbar) {
  detail::require_positive(dp, "momentum extent");
  detail::require_positive(dq, "coordinate extent");
  detail::require_positive(hbar, "hbar");
  if (dimension < 1) throw ArgumentError("dimension must be >= 1");
  return dp * dq / std::pow(2.0 * std::numbers::pi * hbar, dimension);
}

/// E_d = C Lambda^D T_d^{2+gamma} zeta(1 + D/2) Gamma(1 + D/2).
inline double degeneration_energy(double t_d, double gamma, double lambda, double c, int dimension) {
  detail::require_positive(t_d, "degeneration temperature");
  detail::require_positive(lambda, "Lambda");
  if (!(c >= 0.0)) throw ArgumentError("C must be nonnegative");
  if (!(gamma > -1.0)) throw ArgumentError("gamma must exceed -1");
  if (dimension < 1) throw ArgumentError("dimension must be >= 1");
  const double s = 1.0 + dimension / 2.0;
  return c * std::pow(lambda, dimension) * std::pow(t_d, 2.0 + gamma) * zeta(s) * gamma_fn(s);
}

/// Omega-potential with occupancy capped at N_cap per level:
///   -Lambda^{gamma-gamma_c} T sum_k ln[(1 - e^{(mu-eps_k) N/T}) / (1 - e^{(mu-eps_k)/T})].
inline double parastat_omega(const LevelSpectrum& spectrum, double temperature, double mu,
                             long long n_cap, double lambda, double gamma, double gamma_c) {
  detail::require_positive(temperature, "temperature");
  detail::require_positive(lambda, "Lambda");
  if (n_cap < 1) throw ArgumentError("occupancy cap must be >= 1");
  if (!(mu < spectrum.ground_energy())) throw DivergenceError("Omega diverges for mu >= eps_1");
  const auto levels = spectrum.levels();
  const auto exponent = spectrum.basis_exponent();
  const double cap = static_cast<double>(n_cap);
  double sum = 0.0;
  bool converged = !exponent.has_value();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double x = (mu - levels[i].energy) / temperature;
    const double term = std::log1p(-std::exp(cap * x)) - std::log1p(-std::exp(x));
    sum += levels[i].degeneracy * term;
    if (!exponent || i + 1 == levels.size()) continue;
    // Tail: each term is below e^x / (1 - e^{x_K}).
    const double bound = std::exp(mu / temperature) / -std::expm1(x) *
                         detail::power_exp_tail(0.0, *exponent, 1.0 / temperature, static_cast<double>(i + 1));
    if (bound <= 1e-10 * std::abs(sum) || bound <= 1e-300) {
      converged = true;
      break;
    }
  }
  if (!converged) throw TruncationError("Omega sum truncated before its tail fell below 1e-10");
  return -std::pow(lambda, gamma - gamma_c) * temperature * sum;
}

struct IdentitySides {
  double lhs;
  double rhs;
};

namespace detail {

// 1/(e^{b x} - 1) - k/(e^{k b x} - 1), stable at small x.
inline double capped_difference(double x, double b, double k) {
  if (b * x < 1.0) return k * f_kernel(k * b * x) - f_kernel(b * x);
  return 1.0 / std::expm1(b * x) - k / std::expm1(k * b * x);
}

inline void require_negative_gamma(double gamma) {
  if (!(gamma > -1.0 && gamma < 0.0)) throw DomainError("gamma must lie in (-1, 0)");
}

}  // namespace detail

/// Sum-integral identity for the capped occupation difference:
///   int_0^inf [1/(e^{b x}-1) - k/(e^{k b x}-1)] x^gamma dx = c(gamma) b^{-alpha} (k^{1-alpha} - 1),
/// alpha = 1 + gamma. The measure x^gamma dx is d(x^alpha)/alpha; the lhs is
/// integrated in u = x^alpha to remove the endpoint singularity.
inline IdentitySides parastat_identity_check(double gamma, double b, double k) {
  detail::require_negative_gamma(gamma);
  detail::require_positive(b, "b");
  if (!(k >= 1.0)) throw ArgumentError("k must be >= 1");
  const double alpha = 1.0 + gamma;
  const double rhs = c_gamma(gamma) * std::pow(b, -alpha) * (std::pow(k, 1.0 - alpha) - 1.0);
  if (k == 1.0) return {0.0, rhs};
  std::vector<double> cuts_x = {0.0, 1.0 / (k * b), 10.0 / (k * b), 1.0 / b, 10.0 / b, 60.0 / b};
  std::sort(cuts_x.begin(), cuts_x.end());
  std::vector<double> cuts_u;
  for (double x : cuts_x) cuts_u.push_back(std::pow(x, alpha));
  const double integral = detail::integrate_pieces(
      [&](double u) { return detail::capped_difference(std::pow(u, 1.0 / alpha), b, k); }, cuts_u, 1e-12);
  return {integral / alpha, rhs};
}

struct SumBound {
  double sum;
  double bound;
};

/// sum_{j>=1} j^gamma F(b j) against its integral majorant b^{-gamma-1} c(gamma).
inline SumBound nazaikinsky_bound(double gamma, double b) {
  detail::require_negative_gamma(gamma);
  detail::require_positive(b, "b");
  const auto last = static_cast<std::size_t>(std::max(50.0, std::ceil(60.0 / b)));
  double sum = 0.0;
  for (std::size_t j = last; j >= 1; --j) {  // small terms first
    const double x = static_cast<double>(j);
    sum += std::pow(x, gamma) * f_kernel(b * x);
  }
  // Past j = last, F(b j) = 1/(b j) up to e^{-60}.
  sum += hurwitz_zeta(1.0 - gamma, static_cast<double>(last + 1)) / b;
  return {sum, std::pow(b, -gamma - 1.0) * c_gamma(gamma)};
}

struct AsymptoticPair {
  double exact;
  double leading;
};

/// N at mu = 0 for gamma < 0: Lambda^{gamma-gamma_c} sum j^gamma/(e^{b j}-1)
/// against its leading term Lambda^{gamma-gamma_c} zeta(1-gamma)/b.
inline AsymptoticPair n_mu0_asymptotic(double gamma, double b, double lambda, double gamma_c) {
  detail::require_negative_gamma(gamma);
  detail::require_positive(b, "b");
  detail::require_positive(lambda, "Lambda");
  const auto last = static_cast<std::size_t>(std::ceil(45.0 / b)) + 1;
  double sum = 0.0;
  for (std::size_t j = last; j >= 1; --j) {
    const double x = static_cast<double>(j);
    sum += std::pow(x, gamma) / std::expm1(b * x);
  }
  const double scale = std::pow(lambda, gamma - gamma_c);
  return {scale * sum, scale * zeta(1.0 - gamma) / b};
}

struct RemainderReport {
  double sum;
  double integral;
  double remainder;
};

/// Euler-Maclaurin comparison of sum_j j^gamma [1/(e^{b j}-1) - k/(e^{k b j}-1)]
/// with its integral c(gamma) b^{-alpha} (k^{1-alpha} - 1).
inline RemainderReport euler_maclaurin_remainder(double gamma, double b, double k) {
  detail::require_negative_gamma(gamma);
  detail::require_positive(b, "b");
  if (!(k >= 1.0)) throw ArgumentError("k must be >= 1");
  const auto last = static_cast<std::size_t>(std::ceil(45.0 / b)) + 1;
  double sum = 0.0;
  for (std::size_t j = last; j >= 1; --j) {
    const double x = static_cast<double>(j);
    sum += std::pow(x, gamma) * detail::capped_difference(x, b, k);
  }
  const double alpha = 1.0 + gamma;
  const double integral = c_gamma(gamma) * std::pow(b, -alpha) * (std::pow(k, 1.0 - alpha) - 1.0);
  return {sum, integral, sum - integral};
}

}  // namespace critstat
