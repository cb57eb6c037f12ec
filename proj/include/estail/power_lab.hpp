#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "estail/blocking.hpp"
#include "estail/distributions.hpp"
#include "estail/tail_test.hpp"

namespace estail {

struct SimulationPlan {
  DistributionSpec spec = DistributionSpec::exponential(1.0);
  std::vector<std::size_t> n_grid;
  std::size_t k_blocks = 1;
  double alpha = 0.05;
  std::size_t reps = 10000;
  std::uint64_t base_seed = 42;
  SmallMaxPolicy small_max = SmallMaxPolicy::Raw;
  PartitionStrategy::Kind partition = PartitionStrategy::Kind::Sequential;

  /// Throws DomainError when reps < 100, alpha is outside (0, 0.5), the grid
  /// is empty, or some n cannot hold k blocks of at least 3.
  void validate() const;
};

/// Tallies at one sample size. Every replicate lands in exactly one of
/// short, medium, long or errors.
struct RateRow {
  std::size_t n = 0;
  std::size_t reps = 0;
  std::size_t short_count = 0;
  std::size_t medium_count = 0;
  std::size_t long_count = 0;
  std::size_t error_count = 0;
  std::vector<std::string> diagnostics;  ///< first 10 replicate errors

  double short_rate() const noexcept;
  double long_rate() const noexcept;
  double medium_rate() const noexcept;
  /// sqrt(p (1 - p) / reps).
  double stderr_short() const noexcept;
  double stderr_long() const noexcept;
};

struct SimulationReport {
  SimulationPlan plan;
  std::vector<RateRow> rows;
};

/// Runs every (n, replicate) of the plan. Replicate r of every n draws from
/// stream (base_seed, r), so the report does not depend on `threads`.
SimulationReport run_plan(const SimulationPlan& plan, unsigned threads = 0);

enum class ConsistencyVerdict { Pass, Fail, NotApplicable };

struct ConsistencyScan {
  ConsistencyVerdict verdict = ConsistencyVerdict::NotApplicable;
  SimulationReport report;
  std::string reason;
};

/// Checks that the correct-direction rejection rate grows from the smallest
/// to the largest n while the wrong-direction rate stays below
/// 2 alpha + 3 standard errors. Medium-tailed specs are NotApplicable.
ConsistencyScan consistency_scan(const DistributionSpec& spec, std::vector<std::size_t> n_grid,
                                 std::size_t k, double alpha, std::size_t reps,
                                 std::uint64_t seed = 42, unsigned threads = 0);

std::string_view to_string(ConsistencyVerdict v) noexcept;

enum class TableFormat { CSV, JSON, Markdown };

/// Renders reports. CSV has one row per (dist, n, k); Markdown mirrors the
/// published layout with rows = n and paired S/L columns per report; JSON
/// carries the full plan and per-row standard errors.
std::string emit_table(std::span<const SimulationReport> reports, TableFormat format);

inline constexpr std::string_view kReportCsvHeader =
    "dist,n,k,alpha,short_rate,long_rate,stderr_s,stderr_l,errors,seed";

/// Parses a plan file of `key=value` lines (`dist`, `n`, `k`, `alpha`, `reps`,
/// `seed`, `smallmax`, `partition`). Each `dist=` line yields one plan sharing
/// the other keys. `#` starts a comment.
std::vector<SimulationPlan> parse_plan(std::string_view text);

SmallMaxPolicy parse_small_max_policy(std::string_view text);
std::string_view to_string(SmallMaxPolicy p) noexcept;

}  // namespace estail
