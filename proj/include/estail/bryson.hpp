#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "estail/distributions.hpp"
#include "estail/sample.hpp"
#include "estail/tail_class.hpp"

namespace estail {

/// Simulated quantiles of T* under one distribution at one sample size.
struct BrysonQuantileTable {
  DistributionSpec spec = DistributionSpec::exponential(1.0);
  std::size_t n = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::vector<double> probs;
  std::vector<double> quantiles;
  std::vector<double> stderrs;  ///< bootstrap standard errors

  /// Quantile at a tabulated probability; throws DomainError if absent.
  double at(double prob) const;
};

struct BrysonResult {
  double t_star = 0.0;
  std::size_t n = 0;
  std::optional<BrysonQuantileTable> table;
  std::optional<TailClass> decision;
};

inline constexpr double kBrysonDefaultProbs[] = {0.025, 0.05, 0.95, 0.975};

/// Bryson's T* = mean * X_(n) / ((n - 1) * G^2), G the geometric mean of
/// X_i + X_(n) / (n - 1). Scale invariant; needs X_i + X_(n)/(n-1) > 0.
double bryson_statistic(std::span<const double> values);
double bryson_statistic(const Sample& sample);

/// Linear-interpolation (type 7) empirical quantile of ascending data.
double empirical_quantile(std::span<const double> sorted, double prob);

/// Quantiles of T* over `reps` seeded replicates, replicate r drawing from
/// stream (seed, r). Standard errors come from 200 bootstrap resamples.
BrysonQuantileTable simulate_bryson_quantiles(const DistributionSpec& spec, std::size_t n,
                                              std::size_t reps, std::uint64_t seed,
                                              std::span<const double> probs = kBrysonDefaultProbs,
                                              unsigned threads = 0);

/// Two-sided decision against an Exp(1) table at the sample's n: Short below
/// the alpha/2 quantile, Long above the 1 - alpha/2 quantile.
TailClass bryson_test(const Sample& sample, double alpha, const BrysonQuantileTable& null_table);

}  // namespace estail
