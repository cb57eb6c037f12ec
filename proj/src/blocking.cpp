#include "estail/blocking.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "estail/errors.hpp"
#include "estail/random.hpp"
#include "estail/special.hpp"

namespace estail {
namespace {

void shuffle(std::span<double> values, std::uint64_t seed) {
  // Fisher-Yates on a dedicated stream so the permutation depends only on seed.
  RandomStream rng({seed, 0x9e3779b97f4a7c15ull});
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace

std::vector<std::size_t> block_sizes(std::size_t n, std::size_t k) {
  if (k == 0) throw DomainError("number of blocks must be at least 1");
  if (n / k < 3) throw BlockTooSmall(n, k);
  std::vector<std::size_t> sizes(k, n / k);
  for (std::size_t j = 0; j < n % k; ++j) ++sizes[j];
  return sizes;
}

std::vector<Sample> partition(const Sample& sample, std::size_t k, PartitionStrategy strategy) {
  const auto sizes = block_sizes(sample.size(), k);
  std::vector<double> values(sample.values().begin(), sample.values().end());
  if (strategy.kind == PartitionStrategy::Kind::SeededShuffle) shuffle(values, strategy.seed);

  std::vector<Sample> blocks;
  blocks.reserve(k);
  auto it = values.begin();
  for (std::size_t size : sizes) {
    blocks.push_back(shift_sample(std::vector<double>(it, it + static_cast<std::ptrdiff_t>(size))));
    it += static_cast<std::ptrdiff_t>(size);
  }
  return blocks;
}

double blocked_statistic(std::span<double> values, std::size_t k, PartitionStrategy strategy,
                         SmallMaxPolicy policy) {
  const auto sizes = block_sizes(values.size(), k);
  if (strategy.kind == PartitionStrategy::Kind::SeededShuffle) shuffle(values, strategy.seed);
  double sum = 0.0;
  std::size_t offset = 0;
  for (std::size_t j = 0; j < k; ++j) {
    try {
      sum += spacing_statistic(values.subspan(offset, sizes[j]), policy).t_stat;
    } catch (const Error& e) {
      throw BlockFailure(j, e.what());
    }
    offset += sizes[j];
  }
  return sum;
}

CriticalValues gamma_critical_values(std::size_t k, double alpha) {
  if (k == 0) throw DomainError("number of blocks must be at least 1");
  if (k == 1) return {-std::log1p(-alpha), -std::log(alpha)};
  const int shape = static_cast<int>(k);
  return {gamma_quantile(alpha, shape), gamma_quantile(1.0 - alpha, shape)};
}

TailClass classify_blocked(double sum_stat, std::size_t k, double alpha) {
  const auto crit = gamma_critical_values(k, alpha);
  if (sum_stat < crit.lower) return TailClass::Short;
  if (sum_stat > crit.upper) return TailClass::Long;
  return TailClass::Medium;
}

BlockedTestResult blocked_test(const Sample& sample, std::size_t k, double alpha,
                               PartitionStrategy strategy, const TailTestOptions& options) {
  check_alpha(alpha);
  const auto blocks = partition(sample, k, strategy);

  BlockedTestResult r;
  r.k = k;
  r.alpha = alpha;
  r.block_stats.reserve(k);
  r.block_sizes.reserve(k);
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    try {
      r.block_stats.push_back(tail_test(blocks[j], alpha, options).t_stat);
    } catch (const Error& e) {
      throw BlockFailure(j, e.what());
    }
    r.block_sizes.push_back(blocks[j].size());
  }
  for (double t : r.block_stats) r.sum_stat += t;
  const auto crit = gamma_critical_values(k, alpha);
  r.lower_crit = crit.lower;
  r.upper_crit = crit.upper;
  r.decision = classify_blocked(r.sum_stat, k, alpha);
  return r;
}

BlockRange recommend_blocks(std::size_t n) {
  if (n < 15) throw DomainError(fmt::format("block advice needs n >= 15, got {}", n));
  const std::size_t hi = std::clamp<std::size_t>(n / 30, 1, 10);
  const std::size_t lo = n < 150 ? 1 : std::min<std::size_t>(5, hi);
  return {lo, hi};
}

}  // namespace estail
