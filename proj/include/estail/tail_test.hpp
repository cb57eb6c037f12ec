#pragma once

#include <cstddef>
#include <span>

#include "estail/sample.hpp"
#include "estail/tail_class.hpp"

namespace estail {

/// What to do when the largest observation is not above 1, where ln X_(n) <= 0
/// and the statistic leaves its intended domain.
enum class SmallMaxPolicy {
  Error,  ///< throw MaxNotAboveOne
  Short,  ///< classify as short-tailed with T = 0
  Raw,    ///< evaluate the formula as written (needs X_(n) > 0, X_(n) != 1)
};

struct TailTestOptions {
  SmallMaxPolicy small_max = SmallMaxPolicy::Error;
};

struct TailTestResult {
  double t_stat = 0.0;
  double theta_hat = 0.0;
  double spacing = 0.0;
  double surv_at_log_max = 1.0;
  double p_short = 0.0;  ///< P(Exp(1) <= T)
  double p_long = 1.0;   ///< P(Exp(1) >= T)
  TailClass decision = TailClass::Medium;
  double alpha = 0.05;
  std::size_t n = 0;
  bool tied_top = false;        ///< X_(n) == X_(n-1); usually a rounding artefact
  bool small_max_applied = false;  ///< X_(n) <= 1 was handled by a non-error policy
};

/// Ingredients of T_n computed from unsorted data in O(n).
struct SpacingStatistic {
  double t_stat;
  double theta_hat;
  double spacing;
  double surv_at_log_max;
  bool tied_top;
  bool small_max_applied;
};

/// Fraction of observations strictly greater than t.
double empirical_survival(const Sample& sample, double t);
double empirical_survival(std::span<const double> values, double t);

/// -ln F̄_n(ln X_(n)) / ln X_(n); zero when no observation is <= ln X_(n).
double estimate_theta(const Sample& sample);

/// X_(n) - X_(n-1).
double extreme_spacing(const Sample& sample);

/// The statistic T_n = theta_hat * (X_(n) - X_(n-1)) on raw values (n >= 3).
SpacingStatistic spacing_statistic(std::span<const double> values,
                                   SmallMaxPolicy policy = SmallMaxPolicy::Error);

/// Three-way decision against Exp(1) critical values -ln(1 - alpha), -ln(alpha).
TailClass classify(double t_stat, double alpha) noexcept;

/// Throws DomainError unless alpha is in (0, 0.5).
void check_alpha(double alpha);

/// Tests a medium right tail against short and long alternatives.
TailTestResult tail_test(const Sample& sample, double alpha = 0.05,
                         const TailTestOptions& options = {});

}  // namespace estail
