#pragma once

// Exact partition statistics.
//
// p(M, N) counts the multisets of N positive integers summing to M. It is
// built column by column from p(m, n) = p(m-1, n-1) + p(m-n, n), so only two
// columns of arbitrary-precision values are alive at any time.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "critstat/errors.hpp"

namespace critstat {

using PartitionCount = boost::multiprecision::cpp_int;

/// Counts of partitions of M into exactly N parts, for N = 0..M.
class PartitionTable {
 public:
  PartitionTable(std::int64_t total, std::vector<PartitionCount> counts)
      : total_(total), counts_(std::move(counts)) {}

  std::int64_t total() const { return total_; }

  /// p(M, N); zero outside 1..M (p(0, 0) = 1).
  const PartitionCount& exact(std::int64_t parts) const {
    static const PartitionCount zero = 0;
    if (parts < 0 || parts > total_) return zero;
    return counts_[static_cast<std::size_t>(parts)];
  }

  /// Unrestricted partition number p(M).
  PartitionCount unrestricted() const {
    PartitionCount sum = 0;
    for (const auto& c : counts_) sum += c;
    return sum;
  }

  const std::vector<PartitionCount>& counts() const { return counts_; }

 private:
  std::int64_t total_;
  std::vector<PartitionCount> counts_;
};

namespace detail {

// Runs the column recurrence up to `max_parts` and returns p(total, n) for
// n = 0..max_parts.
inline std::vector<PartitionCount> partition_column_values(std::int64_t total, std::int64_t max_parts) {
  const auto m_size = static_cast<std::size_t>(total) + 1;
  std::vector<PartitionCount> out(static_cast<std::size_t>(max_parts) + 1);
  std::vector<PartitionCount> prev(m_size);
  std::vector<PartitionCount> cur(m_size);
  prev[0] = 1;  // p(0, 0) = 1, p(m, 0) = 0 for m > 0
  out[0] = prev[m_size - 1];
  for (std::int64_t n = 1; n <= max_parts; ++n) {
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t m = 0; m < un && m < m_size; ++m) cur[m] = 0;
    for (std::size_t m = un; m < m_size; ++m) {
      cur[m] = prev[m - 1];
      cur[m] += cur[m - un];
    }
    out[un] = cur[m_size - 1];
    std::swap(prev, cur);
  }
  return out;
}

}  // namespace detail

/// Full table p(M, 1..M). O(M^2) big-integer additions.
inline PartitionTable partition_table(std::int64_t total) {
  if (total < 1) throw ArgumentError("partition_table requires M >= 1");
  return PartitionTable(total, detail::partition_column_values(total, total));
}

inline PartitionCount count_exact(std::int64_t total, std::int64_t parts) {
  if (parts <= 0 || total <= 0) throw ArgumentError("count_exact requires 1 <= N <= M");
  if (parts > total) throw ArgumentError("count_exact requires N <= M");
  return detail::partition_column_values(total, parts).back();
}

/// Partitions of M into at most N parts (equivalently N summands with zeros allowed).
inline PartitionCount count_at_most(std::int64_t total, std::int64_t parts) {
  if (total < 0) throw ArgumentError("count_at_most requires M >= 0");
  if (parts <= 0) throw ArgumentError("count_at_most requires N >= 1");
  if (total == 0) return 1;
  const auto values = detail::partition_column_values(total, std::min(parts, total));
  PartitionCount sum = 0;
  for (const auto& v : values) sum += v;
  return sum;
}

/// Ordered decompositions of M into N positive summands: binomial(M-1, N-1).
inline PartitionCount count_compositions(std::int64_t total, std::int64_t parts) {
  if (parts <= 0 || total <= 0 || parts > total) {
    throw ArgumentError("count_compositions requires 1 <= N <= M");
  }
  const std::int64_t n = total - 1;
  const std::int64_t k = std::min(parts - 1, n - (parts - 1));
  PartitionCount result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

/// log2 of an exact count, without converting the whole value to floating point.
inline double hartley_entropy(const PartitionCount& count) {
  if (count <= 0) throw ArgumentError("hartley_entropy requires a count >= 1");
  const auto top_bit = static_cast<std::int64_t>(boost::multiprecision::msb(count));
  if (top_bit < 63) return std::log2(count.convert_to<double>());
  const std::int64_t shift = top_bit - 62;
  const auto mantissa = static_cast<std::uint64_t>(count >> static_cast<unsigned>(shift));
  return std::log2(static_cast<double>(mantissa)) + static_cast<double>(shift);
}

struct CriticalCount {
  std::int64_t parts;             // smallest argmax N_c
  PartitionCount count;           // p(M, N_c)
  std::vector<std::int64_t> ties; // every argmax, ascending
};

inline CriticalCount find_critical(const PartitionTable& table) {
  CriticalCount best{1, table.exact(1), {1}};
  for (std::int64_t n = 2; n <= table.total(); ++n) {
    const auto& c = table.exact(n);
    if (c > best.count) {
      best.parts = n;
      best.count = c;
      best.ties = {n};
    } else if (c == best.count) {
      best.ties.push_back(n);
    }
  }
  return best;
}

/// N_c: the number of parts maximising p(M, N).
inline CriticalCount find_critical(std::int64_t total) {
  if (total < 1) throw ArgumentError("find_critical requires M >= 1");
  return find_critical(partition_table(total));
}

struct ErdosEstimate {
  double parts;  // N_hat
  double beta;
  double alpha;
};

/// Leading two terms of the maximising part count:
///   N_hat = sqrt(M) ln(M) / beta + alpha sqrt(M),  beta = pi sqrt(2/3),
/// with alpha the root of beta/2 = exp(-alpha beta / 2).
inline ErdosEstimate erdos_estimate(std::int64_t total) {
  if (total < 2) throw ArgumentError("erdos_estimate requires M >= 2");
  const double beta = std::numbers::pi * std::sqrt(2.0 / 3.0);
  const double alpha = -(2.0 / beta) * std::log(beta / 2.0);
  const double m = static_cast<double>(total);
  return {std::sqrt(m) * std::log(m) / beta + alpha * std::sqrt(m), beta, alpha};
}

struct PetersburgOutcome {
  double net;
  double ratio;  // net / (e^m l)
};

/// Doubling-by-e martingale: stake l e^k on step k, win on step m.
inline PetersburgOutcome petersburg_net(double stake, std::int64_t steps) {
  if (!(stake > 0.0) || !std::isfinite(stake)) throw ArgumentError("stake must be positive");
  if (steps < 1) throw ArgumentError("petersburg_net requires m >= 1");
  if (steps > 700) throw OverflowError("e^m overflows double precision for m > 700");
  const double e = std::numbers::e;
  const double win = std::exp(static_cast<double>(steps)) * stake;
  const double lost = stake * std::expm1(static_cast<double>(steps)) / (e - 1.0);
  const double net = win - lost;
  if (!std::isfinite(net)) throw OverflowError("petersburg_net overflowed");
  return {net, net / win};
}

}  // namespace critstat
