// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli_cases.hpp"
#include "critstat/bose.hpp"
#include "critstat/burgers.hpp"
#include "critstat/cli.hpp"
#include "critstat/counting.hpp"
#include "critstat/specfun.hpp"
#include "critstat/thermo.hpp"
#include "oracles.hpp"

namespace {

struct Verdict {
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;  // 0 = no limit
  std::function<Verdict()> check;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Verdict partition_exactness() {
  // literal enumeration up to 60, conjugate recursion up to 200
  for (int m = 1; m <= 200; ++m) {
    const auto table = critstat::partition_table(m);
    if (m <= 60) {
      const auto ref = oracle::enumerate_partitions(m);
      for (int n = 1; n <= m; ++n) {
        if (table.exact(n) != critstat::PartitionCount(ref[static_cast<std::size_t>(n)])) {
          return {false, "mismatch at M=" + std::to_string(m) + " N=" + std::to_string(n)};
        }
      }
    }
  }
  oracle::BoundedParts q;
  for (int m = 61; m <= 200; ++m) {
    const auto table = critstat::partition_table(m);
    for (int n = 1; n <= m; ++n) {
      if (table.exact(n) != q(m - n, n)) {
        return {false, "mismatch at M=" + std::to_string(m) + " N=" + std::to_string(n)};
      }
    }
  }
  if (critstat::count_exact(5, 2) != 2 || critstat::count_at_most(5, 2) != 3) return {false, "(5,2) example"};
  return {true, "M<=200 all N; (5,2)=2, at_most(5,2)=3"};
}

Verdict erdos() {
  std::vector<double> gaps;
  double rel = 0.0;
  for (int m : {100, 1000, 10000}) {
    const double nc = static_cast<double>(critstat::find_critical(m).parts);
    const double est = critstat::erdos_estimate(m).parts;
    gaps.push_back(std::abs(nc - est) / std::sqrt(m));
    if (m == 10000) rel = std::abs(nc - est) / est;
  }
  const bool ok = rel <= 0.05 && gaps[1] < gaps[0] && gaps[2] < gaps[1];
  return {ok, "rel(1e4)=" + fmt(rel) + " gaps=" + fmt(gaps[0]) + "," + fmt(gaps[1]) + "," + fmt(gaps[2])};
}

Verdict special_functions() {
  double worst_li = 0.0;
  for (int i = 0; i <= 48; ++i) {
    const double s = 1.2 + 0.1 * i;
    worst_li = std::max(worst_li, std::abs(critstat::polylog(s, 1.0) - oracle::zeta(s)));
  }
  double worst_c = 0.0;
  for (double g : {-0.9, -0.7, -0.5, -0.3, -0.1}) {
    worst_c = std::max(worst_c, std::abs(critstat::c_gamma(g) - oracle::c_gamma(g)));
  }
  return {worst_li <= 1e-10 && worst_c <= 1e-7, "Li err " + fmt(worst_li) + ", c err " + fmt(worst_c)};
}

Verdict parastat_identity() {
  double worst = 0.0;
  for (double g : {-0.8, -0.5, -0.2}) {
    for (double b : {0.5, 1.0, 2.0}) {
      for (double k : {2.0, 10.0, 100.0}) {
        const auto r = critstat::parastat_identity_check(g, b, k);
        worst = std::max(worst, std::abs(r.lhs - r.rhs) / std::max(1.0, std::abs(r.rhs)));
      }
    }
  }
  return {worst <= 1e-6, "27 points, worst rel " + fmt(worst)};
}

Verdict nazaikinsky() {
  int violations = 0;
  int points = 0;
  for (double g : {-0.9, -0.7, -0.5, -0.3, -0.1}) {
    for (double b : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
      const auto r = critstat::nazaikinsky_bound(g, b);
      ++points;
      if (!(r.sum <= r.bound)) ++violations;
    }
  }
  return {violations == 0, std::to_string(points) + " points, " + std::to_string(violations) + " violations"};
}

Verdict asymptotic_slope() {
  bool ok = true;
  std::string detail;
  for (double g : {-0.7, -0.5, -0.3}) {
    std::vector<double> x;
    std::vector<double> y;
    for (double b : {0.2, 0.1, 0.05, 0.02}) {
      const auto p = critstat::n_mu0_asymptotic(g, b, 1.0, g);
      x.push_back(std::log(b));
      y.push_back(std::log(std::abs(p.exact - p.leading)));
    }
    const double s = oracle::slope(x, y);
    ok = ok && std::abs(s + (1.0 + g)) <= 0.15;
    detail += "g=" + fmt(g) + ":" + fmt(s) + " ";
  }
  return {ok, detail};
}

Verdict critical_compressibility() {
  const double gc = critstat::gamma_c_from_Zc(0.29);
  const double residual = std::abs(oracle::zeta(gc + 2) / oracle::zeta(gc + 1) - 0.29);
  double worst = 0.0;
  for (double g : {0.1, 0.2, 0.3, 0.4, 0.5}) {
    const double z = oracle::zeta(g + 2) / oracle::zeta(g + 1);
    worst = std::max(worst, std::abs(critstat::gamma_c_from_Zc(z) - g));
  }
  return {residual <= 1e-10 && worst <= 1e-9,
          "gamma_c=" + fmt(gc) + " residual " + fmt(residual) + " round trip " + fmt(worst)};
}

Verdict phase_matching() {
  const auto spec = critstat::GasSpec::from_Zc(0.29, 2.0);
  const auto m = critstat::phase_match(spec, 0.9);
  const double rel = std::abs(m.M_match - m.rhs) / std::abs(m.rhs);
  const double t0 = critstat::t0_min(spec);
  const auto roots = critstat::gamma_of_T(t0, spec);
  const double gap = roots.metastable ? std::abs(*roots.metastable - roots.least) : 1.0;
  const bool ok = m.a_g > 0 && m.a_g < 1 && rel <= 1e-8 && m.mu_star <= 0 && gap <= 1e-4;
  return {ok, "a_g=" + fmt(m.a_g) + " rel " + fmt(rel) + " mu*=" + fmt(m.mu_star) + " root gap at T0 " + fmt(gap)};
}

Verdict volume_continuity() {
  const auto spec = critstat::GasSpec::from_Zc(0.29, 2.0);
  double worst = 0.0;
  for (double t : {0.4, 0.6, 0.8, 1.0}) {
    for (double a : {0.05, 0.3, 0.6, 0.9, 0.99}) {
      const double limit = critstat::volume_corrected_at_xi(spec, t, a, 0.0).P;
      const double near = critstat::volume_corrected_at_xi(spec, t, a, 1e-7).P;
      worst = std::max(worst, std::abs(near - limit) / std::abs(limit));
    }
  }
  return {worst <= 1e-6, "20 points, worst rel " + fmt(worst)};
}

Verdict maxwell_rule() {
  const auto cubic = critstat::InitialProfile::cubic();
  double worst_x = 0.0;
  for (double t : {1.5, 2.0, 3.0}) worst_x = std::max(worst_x, std::abs(critstat::shock_position(t, cubic)));
  const auto ramp = critstat::InitialProfile::two_ramp();
  double worst_lobe = 0.0;
  double worst_rh = 0.0;
  for (double t : {1.0, 2.0}) {
    const auto lobes = critstat::equal_area_lobes(t, ramp);
    worst_lobe = std::max(worst_lobe, std::abs(lobes.left - lobes.right));
    const auto rh = critstat::rankine_hugoniot(t, ramp);
    worst_rh = std::max(worst_rh, std::abs(rh.measured - rh.predicted) / std::abs(rh.predicted));
  }
  const bool ok = worst_x <= 1e-10 && worst_lobe <= 1e-8 && worst_rh <= 0.01;
  return {ok, "|x_s| " + fmt(worst_x) + ", lobes " + fmt(worst_lobe) + ", speed " + fmt(worst_rh)};
}

Verdict critical_exponent() {
  std::vector<double> grid;
  for (int i = 0; i <= 16; ++i) grid.push_back(std::pow(10.0, -2.0 - 4.0 * i / 16.0));
  const auto fit = critstat::critical_scaling(grid);
  const double closed = std::pow(4.0, 0.25) * (std::sqrt(std::numbers::pi) / 4.0) / std::tgamma(1.25);
  const bool ok = std::abs(fit.exponent - 0.25) <= 0.01 && std::abs(fit.prefactor / closed - 1.0) <= 0.005;
  return {ok, "exponent " + fmt(fit.exponent) + ", prefactor " + fmt(fit.prefactor) + " vs " + fmt(closed)};
}

Verdict viscous_limit() {
  const auto p = critstat::InitialProfile::cubic();
  const double t = 2.0;
  const double xs = critstat::shock_position(t, p);
  std::vector<double> sups;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    double sup = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double x = -2.0 + 4.0 * i / 200.0;
      if (std::abs(x - xs) < 0.1) continue;
      sup = std::max(sup, std::abs(critstat::viscous_solution(x, t, eps, p) - critstat::generalized_solution(x, t, p)));
    }
    sups.push_back(sup);
  }
  return {sups[1] < sups[0] && sups[2] < sups[1], "sup " + fmt(sups[0]) + ", " + fmt(sups[1]) + ", " + fmt(sups[2])};
}

Verdict petersburg() {
  const double ratio = critstat::petersburg_net(1.0, 20).ratio;
  const double limit = (std::numbers::e - 2.0) / (std::numbers::e - 1.0);
  const bool printed = std::abs(ratio - 0.418) < 5e-4;
  return {std::abs(ratio - limit) <= 1e-8 && printed, "ratio " + fmt(ratio) + " limit " + fmt(limit)};
}

Verdict courant() {
  const double lambda = 2000.0;
  const auto count = static_cast<double>(oracle::lattice_octant_count(static_cast<long long>(2 * lambda)));
  const double weyl = critstat::courant_density(lambda, std::pow(std::numbers::pi, 3), 1.0, 3, 1.0);
  const double rel = std::abs(count - weyl) / weyl;
  return {rel <= 0.05, "lattice " + fmt(count) + " vs " + fmt(weyl) + " rel " + fmt(rel)};
}

Verdict cli_determinism() {
  int cases = 0;
  for (const auto& args : cli_cases::all()) {
    for (const char* fmt_name : {"csv", "json"}) {
      std::string reference;
      for (const char* threads : {"1", "8"}) {
        for (int rep = 0; rep < 2; ++rep) {
          std::vector<std::string> argv{"--format", fmt_name, "--threads", threads};
          argv.insert(argv.end(), args.begin(), args.end());
          std::ostringstream out;
          std::ostringstream err;
          const int code = critstat::cli::run(argv, out, err);
          if (code != 0) return {false, args[0] + " exited " + std::to_string(code) + ": " + err.str()};
          if (reference.empty()) reference = out.str();
          else if (out.str() != reference) return {false, args[0] + " output differs"};
        }
      }
      ++cases;
    }
  }
  return {true, std::to_string(cases) + " argv sets, 4 runs each"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "partition exactness", 10, partition_exactness},
      {2, "critical part count estimate", 60, erdos},
      {3, "special-function identities", 5, special_functions},
      {4, "capped-occupation identity", 30, parastat_identity},
      {5, "lattice-sum bound", 0, nazaikinsky},
      {6, "zero-mu asymptotic error slope", 0, asymptotic_slope},
      {7, "critical compressibility anchor", 0, critical_compressibility},
      {8, "phase matching and root merger", 0, phase_matching},
      {9, "volume-correction continuity", 0, volume_continuity},
      {10, "equal-area shock rule", 0, maxwell_rule},
      {11, "fold-point critical exponent", 10, critical_exponent},
      {12, "vanishing-viscosity limit", 0, viscous_limit},
      {13, "doubling-stake constant", 0, petersburg},
      {14, "Weyl count in a cube", 10, courant},
      {15, "CLI determinism", 0, cli_determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      v.ok = false;
      v.detail += " (over " + fmt(c.budget_seconds) + " s budget)";
    }
    if (!v.ok) ++failures;
    std::printf("%s %2d %s: %s [%.3f s]\n", v.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), v.detail.c_str(), secs);
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
