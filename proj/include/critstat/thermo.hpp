#pragma once

// Polylog thermodynamics in reduced coordinates. Activity a = e^{mu/T} in
// (0, 1]; T = 1 is the critical isotherm.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "critstat/detail/numeric.hpp"
#include "critstat/errors.hpp"
#include "critstat/specfun.hpp"

namespace critstat {

/// Orientation of the Lambda exponent in the reference-activity relation.
///   kSolvable: Li_{2+g0}(a0) = zeta(2+g0) Lambda^{g0-gc}  (has a root in (0, 1])
///   kAsPrinted: Lambda^{g0-gc} Li_{2+g0}(a0) = zeta(2+g0) (no root for Lambda > 1)
enum class ReferenceActivityForm { kSolvable, kAsPrinted };

namespace detail {

inline double compressibility_ratio(double gamma) { return zeta(gamma + 2.0) / zeta(gamma + 1.0); }

}  // namespace detail

/// The unique gamma_c > 0 with zeta(gamma_c+2)/zeta(gamma_c+1) = Z_c.
inline double gamma_c_from_Zc(double z_c) {
  if (!(z_c > 0.0 && z_c < 1.0)) throw ArgumentError("Z_c must lie in (0, 1)");
  constexpr double lo = 1e-10;
  constexpr double hi = 60.0;
  auto f = [&](double g) { return detail::compressibility_ratio(g) - z_c; };
  if (!(f(lo) < 0.0) || !(f(hi) > 0.0)) {
    throw NoRootError("Z_c = " + std::to_string(z_c) + " is outside the attainable ratio range");
  }
  return detail::bisect(f, lo, hi, 1e-15);
}

/// Reduced-gas parameters: critical exponent gamma_c (from Z_c) and the
/// calibration constant Lambda.
class GasSpec {
 public:
  static constexpr double kLambdaMin = 1.6;
  static constexpr double kLambdaMax = 3.0;

  /// Calibrated gas: Lambda must lie in (1.6, 3).
  static GasSpec from_Zc(double z_c, double lambda,
                         ReferenceActivityForm form = ReferenceActivityForm::kSolvable) {
    if (!(lambda > kLambdaMin && lambda < kLambdaMax)) {
      throw ArgumentError("Lambda must lie in (1.6, 3), got " + std::to_string(lambda));
    }
    return GasSpec(gamma_c_from_Zc(z_c), z_c, lambda, form);
  }

  /// Any Lambda > 0; for limiting cases such as Lambda = 1.
  static GasSpec uncalibrated(double z_c, double lambda,
                              ReferenceActivityForm form = ReferenceActivityForm::kSolvable) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ArgumentError("Lambda must be positive");
    return GasSpec(gamma_c_from_Zc(z_c), z_c, lambda, form);
  }

  static GasSpec from_gamma_c(double gamma_c, double lambda,
                              ReferenceActivityForm form = ReferenceActivityForm::kSolvable) {
    if (!(gamma_c > 0.0) || !std::isfinite(gamma_c)) throw ArgumentError("gamma_c must be positive");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ArgumentError("Lambda must be positive");
    return GasSpec(gamma_c, detail::compressibility_ratio(gamma_c), lambda, form);
  }

  double gamma_c() const { return gamma_c_; }
  double lambda() const { return lambda_; }
  double z_c() const { return z_c_; }
  ReferenceActivityForm reference_form() const { return form_; }
  /// Activities are a = e^{mu/T}, so mu <= 0 maps to a in (0, 1].
  static constexpr const char* activity_convention() { return "a = exp(mu/T)"; }

 private:
  GasSpec(double gamma_c, double z_c, double lambda, ReferenceActivityForm form)
      : gamma_c_(gamma_c), z_c_(z_c), lambda_(lambda), form_(form) {}

  double gamma_c_;
  double z_c_;
  double lambda_;
  ReferenceActivityForm form_;
};

struct ThermoPoint {
  double T;
  double mu;
  double a;
  double M;
  double N;
  double Z;
};

enum class CurveKind { kGasIsotherm, kLiquidIsochor, kSpinodal, kBinodalSegment };

struct IsoCurve {
  std::vector<ThermoPoint> points;
  CurveKind kind;
};

namespace detail {

inline void require_temperature(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ArgumentError("temperature must be positive");
}

}  // namespace detail

/// M = T^{2+gamma} Li_{2+gamma}(a), N = T^{1+gamma} Li_{1+gamma}(a), Z = M/(N T).
inline ThermoPoint gas_point(const GasSpec&, double t, double mu, double gamma) {
  detail::require_temperature(t);
  if (!(mu <= 0.0)) throw ArgumentError("chemical potential must be <= 0");
  if (!(gamma > -1.0)) throw ArgumentError("gamma must exceed -1");
  const double a = std::exp(mu / t);
  if (!(a > 0.0)) throw RangeError("activity underflows for mu/T = " + std::to_string(mu / t));
  const double m = std::pow(t, 2.0 + gamma) * polylog(2.0 + gamma, a);
  const double n = std::pow(t, 1.0 + gamma) * polylog(1.0 + gamma, a);
  return {t, mu, a, m, n, m / (n * t)};
}

/// Gas isotherm with gamma = gamma_c over a strictly decreasing mu grid.
inline IsoCurve gas_isotherm(const GasSpec& spec, double t, std::span<const double> mu_grid,
                             unsigned threads = 1) {
  if (mu_grid.empty()) throw ArgumentError("mu grid must be nonempty");
  for (std::size_t i = 1; i < mu_grid.size(); ++i) {
    if (!(mu_grid[i] < mu_grid[i - 1])) throw ArgumentError("mu grid must be strictly decreasing");
  }
  auto pts = detail::parallel_map(mu_grid.size(), threads,
                                  [&](std::size_t i) { return gas_point(spec, t, mu_grid[i], spec.gamma_c()); });
  return {std::move(pts), CurveKind::kGasIsotherm};
}

/// Anchor of the incompressible-liquid isochor at temperature T <= 1:
/// N = T^{gc+1} zeta(gc+1), M = T^{gc+2} zeta(gc+2), mu = 0.
inline ThermoPoint liquid_isochor(const GasSpec& spec, double t) {
  detail::require_temperature(t);
  if (t > 1.0) throw ArgumentError("liquid isochor requires T <= 1");
  const double gc = spec.gamma_c();
  const double n = std::pow(t, gc + 1.0) * zeta(gc + 1.0);
  const double m = std::pow(t, gc + 2.0) * zeta(gc + 2.0);
  return {t, 0.0, 1.0, m, n, m / (n * t)};
}

/// Hartley entropy S = n [Z (2+gamma) + mu/T]. At mu = 0 the gas holds at most
/// N_c = T^{1+gamma} zeta(1+gamma); beyond it S stays at S(N_c).
inline double entropy_gas(double n, const GasSpec& spec, double mu, double t, double gamma) {
  if (!(n > 0.0)) throw ArgumentError("n must be positive");
  if (!(gamma > 0.0)) throw ArgumentError("entropy_gas requires gamma > 0");
  const auto p = gas_point(spec, t, mu, gamma);
  const double count = (mu == 0.0) ? std::min(n, p.N) : n;
  return count * (p.Z * (2.0 + gamma) + mu / t);
}

/// A(gamma) = (Lambda^{gamma-gamma_c} c(gamma))^{1/(1+gamma)} for gamma in (-1, 0).
inline double A_of_gamma(double gamma, const GasSpec& spec) {
  if (!(gamma > -1.0 && gamma < 0.0)) throw DomainError("A(gamma) requires gamma in (-1, 0)");
  return std::pow(std::pow(spec.lambda(), gamma - spec.gamma_c()) * c_gamma(gamma), 1.0 / (1.0 + gamma));
}

struct SpinodalMinimum {
  double gamma;  // argmin of A over (-1, 0)
  double A;
};

/// Golden-section minimum of A(gamma). The lower end is clipped to -0.999,
/// where c(gamma) is still resolved.
inline SpinodalMinimum spinodal_minimum(const GasSpec& spec) {
  constexpr double delta = 1e-4;
  const double lo = std::max(-1.0 + delta, kCGammaLowerLimit);
  const auto m = detail::golden_section_min([&](double g) { return A_of_gamma(g, spec); }, lo, -delta, 1e-8);
  return {m.x, m.value};
}

/// T_0 = (min A / zeta(gc+1))^{1/gc}: the lowest temperature with a spinodal root.
inline double t0_min(const GasSpec& spec) {
  const auto m = spinodal_minimum(spec);
  return std::pow(m.A / zeta(spec.gamma_c() + 1.0), 1.0 / spec.gamma_c());
}

struct GammaRoots {
  double least;                      // most negative root (the physical branch)
  std::optional<double> metastable;  // second root, if it lies above -1e-4
};

/// Both roots of A(gamma) = target in (-1, 0).
inline GammaRoots spinodal_roots(const GasSpec& spec, double target, const SpinodalMinimum& minimum) {
  if (!(target > 0.0) || !std::isfinite(target)) throw ArgumentError("spinodal target must be positive");
  if (target < minimum.A * (1.0 - 1e-10)) {
    throw NoRootError("no spinodal root: target " + std::to_string(target) + " is below min A = " +
                      std::to_string(minimum.A) + " (temperature below T_0)");
  }
  if (target <= minimum.A * (1.0 + 1e-10)) return {minimum.gamma, minimum.gamma};
  auto f = [&](double g) { return A_of_gamma(g, spec) - target; };
  const double lo = kCGammaLowerLimit;
  if (!(f(lo) > 0.0)) {
    throw RangeError("least spinodal root lies below gamma = -0.999 where c(gamma) is refused");
  }
  GammaRoots roots{detail::bisect(f, lo, minimum.gamma, 1e-13), std::nullopt};
  constexpr double hi = -1e-4;
  if (f(hi) > 0.0) roots.metastable = detail::bisect(f, minimum.gamma, hi, 1e-13);
  return roots;
}

/// gamma(T): roots of A(gamma) = T^{gc} zeta(gc+1).
inline GammaRoots gamma_of_T(double t, const GasSpec& spec, const SpinodalMinimum& minimum) {
  detail::require_temperature(t);
  return spinodal_roots(spec, std::pow(t, spec.gamma_c()) * zeta(spec.gamma_c() + 1.0), minimum);
}

inline GammaRoots gamma_of_T(double t, const GasSpec& spec) { return gamma_of_T(t, spec, spinodal_minimum(spec)); }

/// Reference activity a_0 at gamma_0 = gamma(1).
inline double a0_solve(const GasSpec& spec, double gamma0) {
  if (!(gamma0 > -1.0 && gamma0 < 0.0)) throw DomainError("a0_solve requires gamma_0 in (-1, 0)");
  const double s = 2.0 + gamma0;
  const double top = zeta(s);
  const double exponent = spec.reference_form() == ReferenceActivityForm::kSolvable
                              ? gamma0 - spec.gamma_c()
                              : spec.gamma_c() - gamma0;
  const double target = top * std::pow(spec.lambda(), exponent);
  if (std::abs(target - top) <= 1e-14 * top) return 1.0;
  if (target > top) {
    throw NoRootError("reference activity needs Li(a0) = " + std::to_string(target) +
                      " above zeta(2+gamma_0) = " + std::to_string(top));
  }
  return detail::bisect([&](double a) { return polylog(s, a) - target; }, 0.0, 1.0, 1e-17);
}

struct PhaseMatch {
  double a_g;       // gas activity
  double a_l;       // liquid activity a_g a_0
  double a_0;
  double mu_star;   // T ln a_g
  double M_match;   // common value of both sides
  double rhs;
  double gamma;     // gamma(T)
};

namespace detail {

inline double phase_match_lhs(const GasSpec& spec, double t, double a) {
  const double gc = spec.gamma_c();
  return std::pow(t, gc) * polylog(2.0 + gc, a);
}

inline double phase_match_rhs(const GasSpec& spec, double t, double abs_gamma, double a) {
  return std::pow(spec.lambda(), -abs_gamma - spec.gamma_c()) * std::pow(t, -abs_gamma) *
         polylog(2.0 - abs_gamma, a);
}

}  // namespace detail

/// Gas-liquid matching at T in (T_0, 1]:
///   T^{gc} Li_{2+gc}(a_g) = Lambda^{-|g|-gc} T^{-|g|} Li_{2-|g|}(a_g),  g = gamma(T).
inline PhaseMatch phase_match(const GasSpec& spec, double t) {
  detail::require_temperature(t);
  if (t > 1.0) throw ArgumentError("phase matching requires T <= 1");
  const auto minimum = spinodal_minimum(spec);
  const double t0 = std::pow(minimum.A / zeta(spec.gamma_c() + 1.0), 1.0 / spec.gamma_c());
  if (!(t > t0)) throw NoRootError("phase matching requires T > T_0 = " + std::to_string(t0));
  const double gamma = gamma_of_T(t, spec, minimum).least;
  const double gamma0 = gamma_of_T(1.0, spec, minimum).least;
  const double a0 = a0_solve(spec, gamma0);
  const double g = std::abs(gamma);

  auto f = [&](double a) { return detail::phase_match_lhs(spec, t, a) - detail::phase_match_rhs(spec, t, g, a); };
  std::vector<double> grid;
  for (int i = 1; i < 200; ++i) grid.push_back(i / 200.0);
  for (int k = 3; k <= 12; ++k) grid.push_back(1.0 - std::pow(10.0, -k));
  const auto brackets = detail::scan_brackets(f, grid);
  if (brackets.empty()) {
    throw NoRootError("no gas-liquid transition: matching residual keeps its sign on (0, 1)");
  }
  const double a_g = detail::bisect(f, brackets.front().first, brackets.front().second, 1e-16);
  const double lhs = detail::phase_match_lhs(spec, t, a_g);
  const double rhs = detail::phase_match_rhs(spec, t, g, a_g);
  return {a_g, a_g * a0, a0, t * std::log(a_g), lhs, rhs, gamma};
}

struct SpinodalPoint {
  double T;
  double gamma;
  std::optional<double> gamma_metastable;
  double N;          // A(gamma) T
  double M;          // T^{gc+2} zeta(gc+2)
  double mu_tilde;   // -T (ln N)^{-1/4}, proportionality constant 1
  bool flagged;      // mu_tilde is defined (N > 1)
};

struct SpinodalCurve {
  std::vector<SpinodalPoint> points;
  std::vector<double> skipped;  // grid temperatures below T_0
};

inline SpinodalCurve spinodal_curve(const GasSpec& spec, std::span<const double> t_grid, unsigned threads = 1) {
  const auto minimum = spinodal_minimum(spec);
  const double t0 = std::pow(minimum.A / zeta(spec.gamma_c() + 1.0), 1.0 / spec.gamma_c());
  SpinodalCurve curve;
  std::vector<double> kept;
  for (double t : t_grid) {
    detail::require_temperature(t);
    if (t > 1.0) throw ArgumentError("spinodal grid must lie in (T_0, 1]");
    (t > t0 ? kept : curve.skipped).push_back(t);
  }
  const double gc = spec.gamma_c();
  const double zeta2 = zeta(gc + 2.0);
  curve.points = detail::parallel_map(kept.size(), threads, [&](std::size_t i) {
    const double t = kept[i];
    const auto roots = gamma_of_T(t, spec, minimum);
    SpinodalPoint p{};
    p.T = t;
    p.gamma = roots.least;
    p.gamma_metastable = roots.metastable;
    p.N = A_of_gamma(roots.least, spec) * t;
    p.M = std::pow(t, gc + 2.0) * zeta2;
    p.flagged = p.N > 1.0;
    p.mu_tilde = p.flagged ? -t * std::pow(std::log(p.N), -0.25) : 0.0;
    return p;
  });
  return curve;
}

struct CorrectedState {
  double P;
  double Z;
  double xi;
};

inline constexpr double kSmallXi = 1e-6;

/// Wall-reflection correction at a given xi:
///   P = -(T^{2+gc}/xi) [Li_{3+gc}(a e^{-xi}) - Li_{3+gc}(a)],
///   Z = [Li_{3+gc}(a e^{-xi}) - Li_{3+gc}(a)] / [Li_{2+gc}(a e^{-xi}) - Li_{2+gc}(a)].
/// Below |xi| = 1e-6 the first-order expansion about xi = 0 is used.
inline CorrectedState volume_corrected_at_xi(const GasSpec& spec, double t, double a, double xi) {
  detail::require_temperature(t);
  if (!(a > 0.0 && a < 1.0)) throw ArgumentError("activity must lie in (0, 1)");
  if (!std::isfinite(xi)) throw ArgumentError("xi must be finite");
  if (!(a * std::exp(-xi) < 1.0)) throw DomainError("a e^{-xi} must stay below 1");
  const double gc = spec.gamma_c();
  const double scale = std::pow(t, 2.0 + gc);
  if (std::abs(xi) < kSmallXi) {
    const double l2 = polylog(2.0 + gc, a);
    const double l1 = polylog(1.0 + gc, a);
    if (xi == 0.0) return {scale * l2, l2 / l1, 0.0};
    const double l0 = polylog(gc, a);
    const double num = l2 - 0.5 * xi * l1;
    return {scale * num, num / (l1 - 0.5 * xi * l0), xi};
  }
  const double shifted = a * std::exp(-xi);
  const double d3 = polylog(3.0 + gc, shifted) - polylog(3.0 + gc, a);
  const double d2 = polylog(2.0 + gc, shifted) - polylog(2.0 + gc, a);
  return {-scale * d3 / xi, d3 / d2, xi};
}

/// Same with xi = q (1/T - 1).
inline CorrectedState volume_corrected(const GasSpec& spec, double t, double a, double q) {
  detail::require_temperature(t);
  if (!(q >= 0.0)) throw ArgumentError("q must be nonnegative");
  return volume_corrected_at_xi(spec, t, a, q * (1.0 / t - 1.0));
}

namespace detail {

// (zeta(s) - Li_s(e^{-xi})) / xi for s > 2. The quotient tends to zeta(s-1)
// like xi^{s-2}, so small xi uses the expansion of Li_s about a = 1 with the
// constant term removed analytically.
inline double zeta_gap_quotient(double s, double xi) {
  if (xi == 0.0) return zeta(s - 1.0);
  const bool near_integer = std::abs(s - std::round(s)) < 1e-3;
  if (xi >= 0.5 || near_integer) return (zeta(s) - polylog(s, std::exp(-xi))) / xi;
  double sum = -std::tgamma(1.0 - s) * std::pow(xi, s - 2.0);
  double power = 1.0;  // xi^{k-1} / k!
  for (int k = 1; k <= 40; ++k) {
    power /= k;
    const double term = ((k % 2) ? 1.0 : -1.0) * zeta_continued(s - k) * power;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    power *= xi;
  }
  return sum;
}

}  // namespace detail

/// Spinodal target with the wall correction: T^{gc} |Li_{2+gc}(e^{-xi}) - zeta(2+gc)| / xi.
inline double spinodal_corrected(const GasSpec& spec, double t, double q) {
  detail::require_temperature(t);
  if (!(q >= 0.0)) throw ArgumentError("q must be nonnegative");
  const double xi = q * (1.0 / t - 1.0);
  if (xi < 0.0) throw DomainError("corrected spinodal needs xi >= 0 (T <= 1)");
  const double gc = spec.gamma_c();
  return std::pow(t, gc) * detail::zeta_gap_quotient(2.0 + gc, xi);
}

inline GammaRoots spinodal_corrected_roots(const GasSpec& spec, double t, double q) {
  return spinodal_roots(spec, spinodal_corrected(spec, t, q), spinodal_minimum(spec));
}

/// Mixture exponent: (g+2) zeta(g+2)/zeta(g+1) = alpha g1-term + (1-alpha) g2-term.
inline double mixture_gamma(double alpha, double gamma1, double gamma2) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in [0, 1]");
  if (!(gamma1 > 0.0) || !(gamma2 > 0.0)) throw ArgumentError("component exponents must be positive");
  auto g = [](double x) { return (x + 2.0) * detail::compressibility_ratio(x); };
  if (gamma1 == gamma2) return gamma1;
  const double target = alpha * g(gamma1) + (1.0 - alpha) * g(gamma2);
  return detail::bisect([&](double x) { return g(x) - target; }, std::min(gamma1, gamma2),
                        std::max(gamma1, gamma2), 1e-15);
}

/// (1/ln n) ln(n^{ln A} + n^{ln B}), factoring out the larger term.
inline double log_scale_add(double a, double b, double n) {
  if (!(a > 0.0) || !(b > 0.0)) throw ArgumentError("log_scale_add requires A, B > 0");
  if (!(n > 1.0)) throw ArgumentError("log_scale_add requires n > 1");
  const double la = std::log(a);
  const double lb = std::log(b);
  const double ln_n = std::log(n);
  return std::max(la, lb) + std::log1p(std::exp(-std::abs(la - lb) * ln_n)) / ln_n;
}

/// sum P(B | A_i) P(A_i).
inline double total_probability_check(std::span<const double> cond_probs, std::span<const double> priors) {
  if (cond_probs.empty() || cond_probs.size() != priors.size()) {
    throw ArgumentError("conditional probabilities and priors must be nonempty and equally long");
  }
  double prior_sum = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < priors.size(); ++i) {
    if (!(cond_probs[i] >= 0.0 && cond_probs[i] <= 1.0)) throw ArgumentError("probabilities must lie in [0, 1]");
    if (!(priors[i] >= 0.0)) throw ArgumentError("priors must be nonnegative");
    prior_sum += priors[i];
    total += cond_probs[i] * priors[i];
  }
  if (std::abs(prior_sum - 1.0) > 1e-12) throw ArgumentError("priors must sum to 1");
  return total;
}

/// D = ln M / ln n.
inline double dimension_estimate(double m, double n) {
  if (!(m >= 1.0)) throw ArgumentError("dimension_estimate requires M >= 1");
  if (!(n > 1.0)) throw ArgumentError("dimension_estimate requires n > 1");
  return std::log(m) / std::log(n);
}

}  // namespace critstat
