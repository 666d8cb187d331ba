#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "critstat/specfun.hpp"
#include "oracles.hpp"

TEST(Zeta, KnownValues) {
  EXPECT_NEAR(critstat::zeta(2.0), std::numbers::pi * std::numbers::pi / 6.0, 1e-14);
  EXPECT_NEAR(critstat::zeta(4.0), std::pow(std::numbers::pi, 4) / 90.0, 1e-14);
  EXPECT_NEAR(critstat::zeta(0.5), -1.4603545088095868, 1e-12);
}

TEST(Zeta, AgreesWithBoost) {
  for (double s : {0.1, 0.3, 0.7, 0.95, 1.05, 1.2, 1.5, 2.5, 3.3, 7.0, 20.0}) {
    EXPECT_NEAR(critstat::zeta(s), oracle::zeta(s), 1e-12 * std::abs(oracle::zeta(s))) << s;
  }
}

TEST(Zeta, Domain) {
  EXPECT_THROW(critstat::zeta(1.0), critstat::DomainError);
  EXPECT_THROW(critstat::zeta(0.0), critstat::DomainError);
  EXPECT_THROW(critstat::zeta(-2.0), critstat::DomainError);
  EXPECT_THROW(critstat::zeta(std::nan("")), critstat::DomainError);
}

TEST(Hurwitz, ReducesToZetaAndShifts) {
  EXPECT_NEAR(critstat::hurwitz_zeta(3.0, 1.0), oracle::zeta(3.0), 1e-14);
  // zeta(s, q) = q^{-s} + zeta(s, q + 1)
  for (double q : {0.3, 1.7, 12.0}) {
    EXPECT_NEAR(critstat::hurwitz_zeta(2.5, q), std::pow(q, -2.5) + critstat::hurwitz_zeta(2.5, q + 1.0),
                1e-13 * critstat::hurwitz_zeta(2.5, q));
  }
  EXPECT_THROW(critstat::hurwitz_zeta(1.0, 1.0), critstat::DomainError);
}

TEST(Polylog, SeriesOracle) {
  for (double s : {0.5, 1.0, 1.22, 2.22, 4.0}) {
    for (double a : {0.01, 0.3, 0.7, 0.8, 0.95}) {
      const double ref = oracle::polylog_series(s, a);
      EXPECT_NEAR(critstat::polylog(s, a), ref, 1e-12 * ref) << s << " " << a;
    }
  }
}

TEST(Polylog, ClosedForms) {
  // Li_1(a) = -ln(1 - a)
  for (double a : {0.2, 0.9, 0.999, 1.0 - 1e-9}) EXPECT_NEAR(critstat::polylog(1.0, a), -std::log1p(-a), 1e-12 * -std::log1p(-a));
  EXPECT_NEAR(critstat::polylog(2.0, 0.5), std::numbers::pi * std::numbers::pi / 12.0 - 0.5 * std::log(2.0) * std::log(2.0), 1e-14);
}

TEST(Polylog, UnitActivityIsZeta) {
  for (double s = 1.2; s <= 6.0001; s += 0.2) EXPECT_NEAR(critstat::polylog(s, 1.0), oracle::zeta(s), 1e-10);
}

// Li_s(e^mu) = Gamma(1-s) (-mu)^{s-1} + sum_k zeta(s-k) mu^k / k!; two terms suffice here.
TEST(Polylog, SingularTermNearOne) {
  for (double s : {1.22, 2.5}) {
    const double a = 1.0 - std::ldexp(1.0, -40);  // exact, so mu is well conditioned
    const double mu = std::log1p(-std::ldexp(1.0, -40));
    const double ref = oracle::zeta(s) + boost::math::tgamma(1.0 - s) * std::pow(-mu, s - 1.0) + oracle::zeta(s - 1.0) * mu;
    EXPECT_NEAR(critstat::polylog(s, a), ref, 1e-12 * ref) << s;
  }
}

TEST(Polylog, Domain) {
  EXPECT_THROW(critstat::polylog(1.0, 1.0), critstat::DomainError);
  EXPECT_THROW(critstat::polylog(2.0, 1.01), critstat::DomainError);
  EXPECT_THROW(critstat::polylog(0.0, 0.5), critstat::DomainError);
  EXPECT_EQ(critstat::polylog(2.0, 0.0), 0.0);
}

TEST(Kernel, SmallAndLarge) {
  EXPECT_DOUBLE_EQ(critstat::f_kernel(0.0), 0.5);
  for (double x : {1e-6, 0.1, 0.49, 0.51, 3.0, 50.0}) {
    const double direct = 1.0 / x - 1.0 / std::expm1(x);
    EXPECT_NEAR(critstat::f_kernel(x), direct, 1e-9 * direct + (x < 1e-3 ? 1e-9 : 0.0)) << x;
  }
  EXPECT_THROW(critstat::f_kernel(-1.0), critstat::DomainError);
}

TEST(Gamma, Values) {
  EXPECT_NEAR(critstat::gamma_fn(0.5), std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(critstat::gamma_fn(5.0), 24.0, 1e-12);
  EXPECT_THROW(critstat::gamma_fn(0.0), critstat::DomainError);
}

TEST(CGamma, MatchesGammaZetaProduct) {
  for (double g : {-0.9, -0.7, -0.5, -0.3, -0.1, -0.01, -0.99}) {
    const double ref = oracle::c_gamma(g);
    EXPECT_NEAR(critstat::c_gamma(g), ref, 1e-10 * std::abs(ref)) << g;
  }
  EXPECT_NEAR(critstat::c_gamma(-0.5), 2.5884, 1e-4);
}

TEST(CGamma, Domain) {
  EXPECT_THROW(critstat::c_gamma(0.0), critstat::DomainError);
  EXPECT_THROW(critstat::c_gamma(-1.0), critstat::DomainError);
  EXPECT_THROW(critstat::c_gamma(-0.9995), critstat::RangeError);
}
