#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "estail/sample.hpp"
#include "estail/tail_test.hpp"

namespace estail {

/// How observations are assigned to blocks. Sequential keeps input order;
/// SeededShuffle permutes first, which protects the i.i.d. premise of the
/// gamma(k, 1) null against serial structure in real data.
struct PartitionStrategy {
  enum class Kind { Sequential, SeededShuffle };
  Kind kind = Kind::SeededShuffle;
  std::uint64_t seed = 0x5eed;

  static PartitionStrategy sequential() { return {Kind::Sequential, 0}; }
  static PartitionStrategy shuffled(std::uint64_t seed) { return {Kind::SeededShuffle, seed}; }
};

struct BlockedTestResult {
  std::size_t k = 1;
  std::vector<double> block_stats;
  std::vector<std::size_t> block_sizes;
  double sum_stat = 0.0;
  double lower_crit = 0.0;  ///< gamma(k, 1) alpha quantile
  double upper_crit = 0.0;  ///< gamma(k, 1) 1 - alpha quantile
  double alpha = 0.05;
  TailClass decision = TailClass::Medium;
};

/// Sizes of k balanced blocks: they differ by at most one and the larger
/// blocks come first. Throws BlockTooSmall when n / k < 3.
std::vector<std::size_t> block_sizes(std::size_t n, std::size_t k);

/// Splits the (shifted) sample into k disjoint blocks.
std::vector<Sample> partition(const Sample& sample, std::size_t k, PartitionStrategy strategy = {});

/// In-place variant used by the simulation engine: permutes `values` when
/// the strategy shuffles, then returns the sum of per-block statistics over
/// consecutive balanced blocks.
double blocked_statistic(std::span<double> values, std::size_t k, PartitionStrategy strategy,
                         SmallMaxPolicy policy);

struct CriticalValues {
  double lower;
  double upper;
};

/// gamma(k, 1) alpha and 1 - alpha quantiles; for k = 1 these are exactly
/// the Exp(1) values -ln(1 - alpha) and -ln(alpha) used by tail_test.
CriticalValues gamma_critical_values(std::size_t k, double alpha);

/// Decision for a sum of k block statistics against gamma(k, 1) quantiles.
TailClass classify_blocked(double sum_stat, std::size_t k, double alpha);

/// Sum of k block statistics tested against gamma(k, 1). Per-block failures
/// are rethrown as BlockFailure carrying the block index.
BlockedTestResult blocked_test(const Sample& sample, std::size_t k, double alpha = 0.05,
                               PartitionStrategy strategy = {}, const TailTestOptions& options = {});

struct BlockRange {
  std::size_t lo;
  std::size_t hi;
};

/// Advisory number of blocks: 5 to 10, clipped so blocks keep at least 30
/// observations; single-block advice starts the range below n = 150.
BlockRange recommend_blocks(std::size_t n);

}  // namespace estail
