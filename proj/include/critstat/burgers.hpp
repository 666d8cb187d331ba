#pragma once

// Vanishing-viscosity Burgers equation v_t + v v_x = (eps/2) v_xx with
// v(x, 0) = p0(x). The Cole-Hopf transform v = -eps d/dx ln u turns it into
// the heat equation, whose solution is a Laplace-type integral over the
// phase  Phi(xi) = (x - xi)^2 / (2t) + P0(xi),  P0' = p0.
// Stationary points of Phi are the characteristics xi + t p0(xi) = x.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "critstat/detail/numeric.hpp"
#include "critstat/errors.hpp"
#include "critstat/specfun.hpp"

namespace critstat {

/// Initial velocity profile. Built-ins:
///   cubic(c):     p0 = x^3 - c x, odd, folds at t = 1/c
///   two_ramp:     triangular hump through (x0, 0), (x1, h), (x2, 0), zero outside
///   sampled:      piecewise-linear through samples, constant beyond the ends
///   constant(c):  p0 = c
/// Primitives are measured from x = 0; the offset cancels everywhere.
class InitialProfile {
 public:
  enum class Family { kCubic, kTwoRamp, kSampled, kConstant };

  static InitialProfile cubic(double c = 1.0) {
    if (!std::isfinite(c)) throw ArgumentError("cubic coefficient must be finite");
    InitialProfile p(Family::kCubic);
    p.c_ = c;
    return p;
  }

  static InitialProfile two_ramp(double x0 = -2.0, double x1 = 0.0, double x2 = 0.5, double height = 1.0) {
    if (!(x0 < x1 && x1 < x2)) throw ArgumentError("two-ramp profile needs x0 < x1 < x2");
    if (!(height != 0.0) || !std::isfinite(height)) throw ArgumentError("two-ramp height must be nonzero");
    InitialProfile p(Family::kTwoRamp);
    p.set_knots({x0, x1, x2}, {0.0, height, 0.0});
    return p;
  }

  static InitialProfile sampled(std::vector<double> xs, std::vector<double> ps) {
    if (xs.size() < 2 || xs.size() != ps.size()) {
      throw ArgumentError("sampled profile needs at least two (x, p) pairs");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(xs[i]) || !std::isfinite(ps[i])) throw ArgumentError("samples must be finite");
      if (i > 0 && !(xs[i] > xs[i - 1])) throw ArgumentError("sample abscissae must increase strictly");
    }
    InitialProfile p(Family::kSampled);
    p.set_knots(std::move(xs), std::move(ps));
    return p;
  }

  static InitialProfile constant(double c) {
    if (!std::isfinite(c)) throw ArgumentError("constant profile value must be finite");
    InitialProfile p(Family::kConstant);
    p.set_knots({0.0}, {c});
    return p;
  }

  Family family() const { return family_; }

  double value(double x) const {
    if (family_ == Family::kCubic) return x * x * x - c_ * x;
    if (x <= xs_.front()) return ps_.front();
    if (x >= xs_.back()) return ps_.back();
    const std::size_t i = segment(x);
    return ps_[i] + slopes_[i] * (x - xs_[i]);
  }

  /// p0'(x); one-sided (right) at kinks.
  double slope(double x) const {
    if (family_ == Family::kCubic) return 3.0 * x * x - c_;
    if (x < xs_.front() || x >= xs_.back()) return 0.0;
    return slopes_[segment(x)];
  }

  /// P0(x) = int_0^x p0.
  double primitive(double x) const {
    if (family_ == Family::kCubic) return 0.25 * x * x * x * x - 0.5 * c_ * x * x;
    return raw_primitive(x) - raw_primitive(0.0);
  }

  /// Abscissae where p0 is not smooth (empty for the cubic).
  std::span<const double> kinks() const {
    if (family_ == Family::kCubic || xs_.size() < 2) return {};
    return xs_;
  }

  /// Smallest t with 1 + t min p0' <= 0; +inf when p0 never decreases.
  double critical_time() const {
    double min_slope = 0.0;
    if (family_ == Family::kCubic) {
      min_slope = -c_;
    } else {
      for (double s : slopes_) min_slope = std::min(min_slope, s);
    }
    return min_slope < 0.0 ? -1.0 / min_slope : std::numeric_limits<double>::infinity();
  }

  /// Points splitting the line into pieces where xi + t p0(xi) is monotone.
  std::vector<double> monotone_breaks(double t) const {
    if (family_ == Family::kCubic) {
      const double d = (c_ * t - 1.0) / (3.0 * t);
      if (d <= 0.0) return {};
      const double r = std::sqrt(d);
      return {-r, r};
    }
    return std::vector<double>(kinks().begin(), kinks().end());
  }

  /// Breaks bounding the single interval where xi + t p0(xi) decreases.
  std::pair<double, double> fold_interval(double t) const {
    if (family_ == Family::kCubic) {
      const auto b = monotone_breaks(t);
      if (b.empty()) throw NoRootError("no fold before the critical time");
      return {b[0], b[1]};
    }
    std::size_t first = slopes_.size();
    std::size_t last = 0;
    std::size_t runs = 0;
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
      if (1.0 + t * slopes_[i] < 0.0) {
        if (first == slopes_.size() || i != last + 1) ++runs;
        if (first == slopes_.size()) first = i;
        last = i;
      }
    }
    if (runs == 0) throw NoRootError("no fold before the critical time");
    if (runs > 1) throw ArgumentError("profile folds in several places; a single shock is supported");
    return {xs_[first], xs_[last + 1]};
  }

 private:
  explicit InitialProfile(Family f) : family_(f) {}

  void set_knots(std::vector<double> xs, std::vector<double> ps) {
    xs_ = std::move(xs);
    ps_ = std::move(ps);
    slopes_.assign(xs_.size() > 1 ? xs_.size() - 1 : 0, 0.0);
    cumulative_.assign(xs_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
      const double dx = xs_[i + 1] - xs_[i];
      slopes_[i] = (ps_[i + 1] - ps_[i]) / dx;
      cumulative_[i + 1] = cumulative_[i] + 0.5 * (ps_[i] + ps_[i + 1]) * dx;
    }
  }

  std::size_t segment(double x) const {
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    return static_cast<std::size_t>(it - xs_.begin()) - 1;
  }

  // int_{xs[0]}^x p0.
  double raw_primitive(double x) const {
    if (x <= xs_.front()) return ps_.front() * (x - xs_.front());
    if (x >= xs_.back()) return cumulative_.back() + ps_.back() * (x - xs_.back());
    const std::size_t i = segment(x);
    const double d = x - xs_[i];
    return cumulative_[i] + ps_[i] * d + 0.5 * slopes_[i] * d * d;
  }

  Family family_;
  double c_ = 0.0;
  std::vector<double> xs_;
  std::vector<double> ps_;
  std::vector<double> slopes_;
  std::vector<double> cumulative_;
};

struct Branch {
  double xi;      // characteristic foot
  double action;  // (x - xi)^2/(2t) + P0(xi)
  double p;       // p0(xi)
};

struct BranchSet {
  double x;
  double t;
  std::vector<Branch> branches;  // ascending in xi
};

namespace detail {

inline void require_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ArgumentError("time must be positive");
}

inline void require_viscosity(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ArgumentError("viscosity must be positive");
}

inline double characteristic(const InitialProfile& p0, double t, double xi) { return xi + t * p0.value(xi); }

inline double action(const InitialProfile& p0, double x, double t, double xi) {
  const double d = x - xi;
  return d * d / (2.0 * t) + p0.primitive(xi);
}

}  // namespace detail

/// Every root of xi + t p0(xi) = x with its action and slope value.
inline BranchSet branch_solve(double x, double t, const InitialProfile& p0) {
  detail::require_time(t);
  if (!std::isfinite(x)) throw ArgumentError("x must be finite");
  auto f = [&](double xi) { return detail::characteristic(p0, t, xi) - x; };
  auto breaks = p0.monotone_breaks(t);
  // Outer ends: walk out until the characteristic map passes x.
  const double base_lo = breaks.empty() ? x : std::min(breaks.front(), x);
  const double base_hi = breaks.empty() ? x : std::max(breaks.back(), x);
  double step = 1.0;
  double lo = base_lo - step;
  while (f(lo) >= 0.0) {
    step *= 2.0;
    lo = base_lo - step;
    if (step > 1e12) throw NoRootError("characteristic map does not pass x on the left");
  }
  step = 1.0;
  double hi = base_hi + step;
  while (f(hi) <= 0.0) {
    step *= 2.0;
    hi = base_hi + step;
    if (step > 1e12) throw NoRootError("characteristic map does not pass x on the right");
  }
  std::vector<double> nodes;
  nodes.push_back(lo);
  for (double b : breaks) {
    if (b > lo && b < hi) nodes.push_back(b);
  }
  nodes.push_back(hi);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double fa = f(nodes[i]);
    const double fb = f(nodes[i + 1]);
    if (fa == 0.0) {
      roots.push_back(nodes[i]);
    } else if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      roots.push_back(detail::bisect(f, nodes[i], nodes[i + 1], 0.0));
    }
  }
  BranchSet out{x, t, {}};
  for (double xi : roots) {
    if (!out.branches.empty() && std::abs(xi - out.branches.back().xi) <= 1e-12 * std::max(1.0, std::abs(xi))) {
      continue;
    }
    out.branches.push_back({xi, detail::action(p0, x, t, xi), p0.value(xi)});
  }
  if (out.branches.empty()) throw NoRootError("no characteristic reaches x");
  return out;
}

/// Minimum-action (entropy) solution; ties go to the smaller xi.
inline double generalized_solution(double x, double t, const InitialProfile& p0) {
  const auto set = branch_solve(x, t, p0);
  const Branch* best = &set.branches.front();
  for (const auto& b : set.branches) {
    if (b.action < best->action) best = &b;
  }
  return best->p;
}

namespace detail {

// x-range on which three branches coexist.
inline std::pair<double, double> overlap_window(double t, const InitialProfile& p0) {
  if (!(t > p0.critical_time())) {
    throw NoRootError("no shock: t = " + std::to_string(t) + " is not past the critical time " +
                      std::to_string(p0.critical_time()));
  }
  const auto [left, right] = p0.fold_interval(t);
  return {characteristic(p0, t, right), characteristic(p0, t, left)};
}

inline double outer_action_gap(double x, double t, const InitialProfile& p0) {
  const auto set = branch_solve(x, t, p0);
  return set.branches.front().action - set.branches.back().action;
}

}  // namespace detail

/// Shock location: the x where the outer branch actions coincide.
inline double shock_position(double t, const InitialProfile& p0) {
  detail::require_time(t);
  const auto [lo, hi] = detail::overlap_window(t, p0);
  const double pad = 1e-12 * std::max(1.0, hi - lo);
  auto gap = [&](double x) { return detail::outer_action_gap(x, t, p0); };
  const double a = lo + pad;
  const double b = hi - pad;
  if (!detail::opposite_signs(gap(a), gap(b))) {
    throw NoRootError("outer actions do not cross inside the overlap window");
  }
  return detail::bisect(gap, a, b, 0.0);
}

struct EqualAreaLobes {
  double x_shock;
  double left;   // -int_{xi1}^{xi2} (X - x_s) dp0
  double right;  // int_{xi2}^{xi3} (X - x_s) dp0
};

/// Areas cut from the multivalued wave (X(xi), p0(xi)) by the line x = x_s.
inline EqualAreaLobes equal_area_lobes(double t, const InitialProfile& p0) {
  const double xs = shock_position(t, p0);
  const auto set = branch_solve(xs, t, p0);
  if (set.branches.size() != 3) throw NoRootError("expected three branches at the shock");
  auto lobe = [&](double a, double b) {
    std::vector<double> cuts{a};
    for (double k : p0.kinks()) {
      if (k > a && k < b) cuts.push_back(k);
    }
    cuts.push_back(b);
    auto integrand = [&](double xi) { return (detail::characteristic(p0, t, xi) - xs) * p0.slope(xi); };
    return detail::integrate_pieces(integrand, cuts);
  };
  const auto& br = set.branches;
  return {xs, -lobe(br[0].xi, br[1].xi), lobe(br[1].xi, br[2].xi)};
}

struct ShockSpeed {
  double measured;   // central difference of x_s(t)
  double predicted;  // (p_left + p_right) / 2
};

inline ShockSpeed rankine_hugoniot(double t, const InitialProfile& p0, double dt = 1e-4) {
  const double speed = (shock_position(t + dt, p0) - shock_position(t - dt, p0)) / (2.0 * dt);
  const auto set = branch_solve(shock_position(t, p0), t, p0);
  return {speed, 0.5 * (set.branches.front().p + set.branches.back().p)};
}

namespace detail {

// ln(1e18): the integrand is dropped where it is below 1e-18 of its peak.
inline const double kLaplaceCut = std::log(1e18);

struct LaplaceSetup {
  double phi_min;
  std::vector<double> cuts;
  double rel_tol;  // above the rounding noise of exp(-(Phi - Phi_min)/eps)
};

inline LaplaceSetup laplace_setup(double x, double t, double eps, const InitialProfile& p0) {
  const auto set = branch_solve(x, t, p0);
  double phi_min = set.branches.front().action;
  for (const auto& b : set.branches) phi_min = std::min(phi_min, b.action);
  const double budget = eps * kLaplaceCut;
  std::vector<double> cuts;
  auto walk = [&](double xi0, double dir) {
    double step = std::sqrt(eps * t);
    for (int i = 0; i < 200; ++i) {
      const double xi = xi0 + dir * step;
      if (action(p0, x, t, xi) - phi_min > budget) return xi;
      step *= 2.0;
    }
    throw QuadratureError("Laplace window does not close");
  };
  for (const auto& b : set.branches) {
    if (b.action - phi_min > budget) continue;
    cuts.push_back(walk(b.xi, -1.0));
    cuts.push_back(b.xi);
    cuts.push_back(walk(b.xi, 1.0));
  }
  const auto [lo, hi] = std::minmax_element(cuts.begin(), cuts.end());
  const double a = *lo;
  const double c = *hi;
  for (double k : p0.kinks()) {
    if (k > a && k < c) cuts.push_back(k);
  }
  std::sort(cuts.begin(), cuts.end());
  const double tiny = 1e-12 * std::max({1.0, std::abs(a), std::abs(c)});
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [&](double u, double v) { return v - u <= tiny; }), cuts.end());
  if (cuts.back() < c) cuts.back() = c;
  const double noise = 1e-14 * std::max(1.0, std::abs(phi_min)) / eps;
  return {phi_min, std::move(cuts), std::max(1e-10, noise)};
}

}  // namespace detail

/// ln u for u = (2 pi eps t)^{-1/2} int exp(-[(x-xi)^2 + 2t P0(xi)] / (2 t eps)) dxi.
inline double heat_solution_log(double x, double t, double eps, const InitialProfile& p0) {
  detail::require_time(t);
  detail::require_viscosity(eps);
  const auto setup = detail::laplace_setup(x, t, eps, p0);
  const double integral = detail::integrate_pieces(
      [&](double xi) { return std::exp(-(detail::action(p0, x, t, xi) - setup.phi_min) / eps); }, setup.cuts,
      setup.rel_tol);
  return -setup.phi_min / eps + std::log(integral) - 0.5 * std::log(2.0 * std::numbers::pi * eps * t);
}

inline double heat_solution(double x, double t, double eps, const InitialProfile& p0) {
  const double log_u = heat_solution_log(x, t, eps, p0);
  const double u = std::exp(log_u);
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw RangeError("u = exp(" + std::to_string(log_u) + ") is outside double range; use heat_solution_log");
  }
  return u;
}

/// v = -eps d/dx ln u as a ratio of quadratures sharing the peak normalisation.
inline double viscous_solution(double x, double t, double eps, const InitialProfile& p0) {
  detail::require_time(t);
  detail::require_viscosity(eps);
  const auto setup = detail::laplace_setup(x, t, eps, p0);
  auto weight = [&](double xi) { return std::exp(-(detail::action(p0, x, t, xi) - setup.phi_min) / eps); };
  const double den = detail::integrate_pieces(weight, setup.cuts, setup.rel_tol);
  const double num =
      detail::integrate_pieces([&](double xi) { return (x - xi) / t * weight(xi); }, setup.cuts, setup.rel_tol);
  return num / den;
}

/// -eps ln(e^{-w1/eps} + e^{-w2/eps}), factored at the smaller weight.
inline double tropical_min(double w1, double w2, double eps) {
  detail::require_viscosity(eps);
  if (!std::isfinite(w1) || !std::isfinite(w2)) throw ArgumentError("weights must be finite");
  return std::min(w1, w2) - eps * std::log1p(std::exp(-std::abs(w1 - w2) / eps));
}

/// v(0, eps) at the fold point: int_0^inf xi e^{-xi^4/(4 eps)} / int_0^inf e^{-xi^4/(4 eps)}.
inline double critical_velocity(double eps) {
  detail::require_viscosity(eps);
  const double top = std::pow(180.0 * eps, 0.25);  // xi^4 / (4 eps) = 45
  auto w = [&](double xi) { return std::exp(-xi * xi * xi * xi / (4.0 * eps)); };
  const double den = detail::integrate(w, 0.0, top);
  const double num = detail::integrate([&](double xi) { return xi * w(xi); }, 0.0, top);
  return num / den;
}

/// 4^{1/4} (sqrt(pi)/4) / Gamma(5/4).
inline double critical_prefactor() {
  return std::pow(4.0, 0.25) * std::sqrt(std::numbers::pi) / 4.0 / gamma_fn(1.25);
}

struct ScalingFit {
  double prefactor;
  double exponent;
};

/// Fits log v(0, eps) = log C + exponent log eps over a decreasing grid.
inline ScalingFit critical_scaling(std::span<const double> eps_grid) {
  if (eps_grid.size() < 2) throw FitError("scaling fit needs at least two viscosities");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    detail::require_viscosity(eps_grid[i]);
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1])) throw ArgumentError("viscosity grid must decrease");
  }
  if (std::log10(eps_grid.front() / eps_grid.back()) < 3.0 - 1e-12) {
    throw FitError("viscosity grid must span at least three decades");
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (double e : eps_grid) {
    lx.push_back(std::log(e));
    ly.push_back(std::log(critical_velocity(e)));
  }
  const auto fit = detail::linear_fit(lx, ly);
  return {std::exp(fit.intercept), fit.slope};
}

}  // namespace critstat
