#include "estail/bryson.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "estail/errors.hpp"
#include "estail/parallel.hpp"
#include "estail/random.hpp"

namespace estail {
namespace {

constexpr std::size_t kBootstrapResamples = 200;

}  // namespace

double BrysonQuantileTable::at(double prob) const {
  for (std::size_t i = 0; i < probs.size(); ++i)
    if (std::abs(probs[i] - prob) < 1e-12) return quantiles[i];
  throw DomainError(fmt::format("quantile table has no entry for probability {}", prob));
}

double bryson_statistic(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw DomainError("Bryson statistic needs at least two observations");
  const double top = *std::max_element(values.begin(), values.end());
  const double a_n = top / static_cast<double>(n - 1);
  double sum = 0.0;
  double log_sum = 0.0;
  for (double x : values) {
    const double shifted = x + a_n;
    if (!(shifted > 0.0))
      throw DomainError("Bryson statistic needs X_i + X_(n)/(n-1) > 0 for every observation");
    sum += x;
    log_sum += std::log(shifted);
  }
  const double mean = sum / static_cast<double>(n);
  // Geometric mean squared, from the mean of logs.
  const double geo_sq = std::exp(2.0 * log_sum / static_cast<double>(n));
  return mean * top / (static_cast<double>(n - 1) * geo_sq);
}

double bryson_statistic(const Sample& sample) { return bryson_statistic(sample.values()); }

double empirical_quantile(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw DomainError("quantile of empty data");
  if (!(prob >= 0.0 && prob <= 1.0)) throw DomainError("quantile probability outside [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

BrysonQuantileTable simulate_bryson_quantiles(const DistributionSpec& spec, std::size_t n,
                                              std::size_t reps, std::uint64_t seed,
                                              std::span<const double> probs, unsigned threads) {
  if (reps < 1000) throw DomainError(fmt::format("need at least 1000 replicates, got {}", reps));
  if (n < 2) throw DomainError("Bryson simulation needs n >= 2");
  for (double p : probs)
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile probabilities must lie in (0, 1)");

  std::vector<double> stats(reps);
  parallel_chunks(reps, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> buffer(n);
    for (std::size_t r = begin; r < end; ++r) {
      RandomStream rng({seed, r});
      sample_into(spec, rng, buffer);
      stats[r] = bryson_statistic(buffer);
    }
  });
  std::sort(stats.begin(), stats.end());

  BrysonQuantileTable table;
  table.spec = spec;
  table.n = n;
  table.reps = reps;
  table.seed = seed;
  table.probs.assign(probs.begin(), probs.end());
  for (double p : probs) table.quantiles.push_back(empirical_quantile(stats, p));

  // Bootstrap over the simulated statistics, on a stream id past the replicates.
  std::vector<std::vector<double>> boot(probs.size());
  std::vector<double> resample(reps);
  for (std::size_t b = 0; b < kBootstrapResamples; ++b) {
    RandomStream rng({seed, reps + b});
    for (double& x : resample) x = stats[rng.below(reps)];
    std::sort(resample.begin(), resample.end());
    for (std::size_t i = 0; i < probs.size(); ++i)
      boot[i].push_back(empirical_quantile(resample, probs[i]));
  }
  for (const auto& draws : boot) {
    double mean = 0.0;
    for (double d : draws) mean += d;
    mean /= static_cast<double>(draws.size());
    double ss = 0.0;
    for (double d : draws) ss += (d - mean) * (d - mean);
    table.stderrs.push_back(std::sqrt(ss / static_cast<double>(draws.size() - 1)));
  }
  return table;
}

TailClass bryson_test(const Sample& sample, double alpha, const BrysonQuantileTable& null_table) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (null_table.n != sample.size())
    throw DomainError(fmt::format("null table was simulated at n = {} but the sample has n = {}",
                                  null_table.n, sample.size()));
  const double lower = null_table.at(alpha / 2.0);
  const double upper = null_table.at(1.0 - alpha / 2.0);
  const double t = bryson_statistic(sample);
  if (t < lower) return TailClass::Short;
  if (t > upper) return TailClass::Long;
  return TailClass::Medium;
}

}  // namespace estail
