#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "critstat/counting.hpp"
#include "oracles.hpp"

using critstat::PartitionCount;

TEST(Partitions, SmallExamples) {
  EXPECT_EQ(critstat::count_exact(5, 2), 2);
  EXPECT_EQ(critstat::count_at_most(5, 2), 3);
  EXPECT_EQ(critstat::count_exact(1, 1), 1);
  EXPECT_EQ(critstat::count_exact(10, 3), 8);
  EXPECT_EQ(critstat::count_exact(1000, 1), 1);
  EXPECT_EQ(critstat::count_exact(1000, 1000), 1);
  EXPECT_EQ(critstat::count_at_most(10, 3), 14);
  EXPECT_EQ(critstat::count_at_most(5, 3), 5);
  EXPECT_EQ(critstat::count_at_most(0, 4), 1);
  EXPECT_EQ(critstat::count_at_most(12, 12), critstat::count_at_most(12, 40));
  EXPECT_THROW(critstat::count_exact(7, 8), critstat::ArgumentError);
  EXPECT_THROW(critstat::count_exact(7, 0), critstat::ArgumentError);
  EXPECT_THROW(critstat::count_at_most(7, 0), critstat::ArgumentError);
}

TEST(Partitions, TableMatchesEnumeration) {
  for (int m = 1; m <= 40; ++m) {
    const auto table = critstat::partition_table(m);
    const auto ref = oracle::enumerate_partitions(m);
    for (int n = 1; n <= m; ++n) EXPECT_EQ(table.exact(n), PartitionCount(ref[static_cast<std::size_t>(n)])) << m << "," << n;
  }
}

TEST(Partitions, ConjugateOracleAt150) {
  oracle::BoundedParts q;
  const auto table = critstat::partition_table(150);
  for (int n = 1; n <= 150; ++n) EXPECT_EQ(table.exact(n), q(150 - n, n));
}

TEST(Partitions, RowSumsArePartitionNumbers) {
  const auto p = oracle::pentagonal_partitions(300);
  for (int m : {1, 2, 10, 100, 299, 300}) EXPECT_EQ(critstat::partition_table(m).unrestricted(), p[static_cast<std::size_t>(m)]);
}

TEST(Partitions, AtMostIsCumulative) {
  PartitionCount acc = 0;
  for (int n = 1; n <= 30; ++n) {
    acc += critstat::count_exact(30, n);
    EXPECT_EQ(critstat::count_at_most(30, n), acc);
  }
}

TEST(Partitions, RejectsBadArguments) {
  EXPECT_THROW(critstat::partition_table(0), critstat::ArgumentError);
  EXPECT_THROW(critstat::find_critical(0), critstat::ArgumentError);
  EXPECT_THROW(critstat::hartley_entropy(PartitionCount(0)), critstat::ArgumentError);
}

TEST(Compositions, Binomial) {
  EXPECT_EQ(critstat::count_compositions(10, 3), 36);
  EXPECT_EQ(critstat::count_compositions(5, 5), 1);
  EXPECT_EQ(critstat::count_compositions(5, 1), 1);
  PartitionCount total = 0;
  for (int n = 1; n <= 20; ++n) total += critstat::count_compositions(20, n);
  EXPECT_EQ(total, PartitionCount(1) << 19);
}

TEST(Critical, Hundred) {
  const auto c = critstat::find_critical(100);
  EXPECT_EQ(c.parts, 18);
  EXPECT_EQ(c.count, 11087828);
  ASSERT_EQ(c.ties.size(), 1u);
}

TEST(Critical, AgreesWithOracleArgmax) {
  oracle::BoundedParts q;
  for (int m : {20, 57, 120}) {
    int best = 1;
    oracle::Big best_count = 0;
    for (int n = 1; n <= m; ++n) {
      const auto v = q(m - n, n);
      if (v > best_count) {
        best_count = v;
        best = n;
      }
    }
    EXPECT_EQ(critstat::find_critical(m).parts, best) << m;
  }
}

TEST(Critical, HartleyEntropyIsLog2) {
  EXPECT_DOUBLE_EQ(critstat::hartley_entropy(PartitionCount(1024)), 10.0);
  const auto big = PartitionCount(1) << 300;
  EXPECT_NEAR(critstat::hartley_entropy(big * 3), 300.0 + std::log2(3.0), 1e-12);
}

TEST(Erdos, ConstantsAndTrend) {
  const auto e = critstat::erdos_estimate(100);
  EXPECT_NEAR(e.beta, std::numbers::pi * std::sqrt(2.0 / 3.0), 1e-15);
  // alpha is the root of beta/2 = exp(-alpha beta/2)
  EXPECT_NEAR(std::exp(-e.alpha * e.beta / 2.0), e.beta / 2.0, 1e-14);
  double prev = 1e9;
  for (int m : {100, 1000}) {
    const double gap = std::abs(critstat::find_critical(m).parts - critstat::erdos_estimate(m).parts) / std::sqrt(m);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
}

TEST(Petersburg, RatioLimit) {
  const double limit = (std::numbers::e - 2.0) / (std::numbers::e - 1.0);
  EXPECT_NEAR(critstat::petersburg_net(1.0, 20).ratio, limit, 1e-8);
  EXPECT_NEAR(critstat::petersburg_net(3.5, 40).ratio, limit, 1e-15);
  // one step: win e l, lost l
  EXPECT_NEAR(critstat::petersburg_net(2.0, 1).net, 2.0 * std::numbers::e - 2.0, 1e-14);
  EXPECT_THROW(critstat::petersburg_net(1.0, 701), critstat::OverflowError);
  EXPECT_THROW(critstat::petersburg_net(-1.0, 3), critstat::ArgumentError);
}
