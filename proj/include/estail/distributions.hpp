#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "estail/random.hpp"
#include "estail/tail_class.hpp"

namespace estail {

enum class Family {
  Exponential,    // rate theta (mean 1/theta)
  Logistic,       // location 0, scale 1
  Gamma,          // shape, scale 1
  Uniform01,
  Normal,
  Lognormal,      // exp(N(0, 1))
  Gumbel,         // minimum-type extreme value, F̄(x) = exp(-e^x)
  Cauchy,
  StudentT,       // df
  ParetoShifted,  // F̄(x) = 1 / (1 + x^gamma)
  Weibull,        // F̄(x) = exp(-x^gamma)
  LogGamma,       // exp(scale * Gamma(shape, 1))
};

/// A member of the simulation catalogue. Parameters are validated on
/// construction; families without parameters ignore them.
class DistributionSpec {
 public:
  static DistributionSpec exponential(double theta = 1.0);
  static DistributionSpec logistic();
  static DistributionSpec gamma(double shape);
  static DistributionSpec uniform01();
  static DistributionSpec normal();
  static DistributionSpec lognormal();
  static DistributionSpec gumbel();
  static DistributionSpec cauchy();
  static DistributionSpec student_t(double df);
  static DistributionSpec pareto_shifted(double gamma);
  static DistributionSpec weibull(double gamma);
  static DistributionSpec log_gamma(double shape, double scale);

  /// Parses `family[:param[,param]]`, e.g. `pareto:2`, `exp:100`,
  /// `loggamma:0.5,1`. Throws DomainError naming the valid families.
  static DistributionSpec parse(std::string_view text);

  Family family() const noexcept { return family_; }
  double param(std::size_t i) const noexcept { return params_[i]; }

  /// Canonical `family:params` form accepted by parse().
  std::string to_string() const;
  /// Short column label in the style of the published tables, e.g. `E(1)`, `P(5)`.
  std::string label() const;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

 private:
  DistributionSpec(Family f, double p0, double p1);

  Family family_;
  std::array<double, 2> params_;
};

/// Names accepted by DistributionSpec::parse.
std::string_view valid_family_names() noexcept;

/// Fills `out` with i.i.d. draws from `spec`.
void sample_into(const DistributionSpec& spec, RandomStream& rng, std::span<double> out);

/// n i.i.d. draws from `spec` on the stream identified by `seed`.
std::vector<double> sample(const DistributionSpec& spec, std::size_t n, SeedSpec seed);

double survival(const DistributionSpec& spec, double x);
double cdf(const DistributionSpec& spec, double x);
/// Inverse of the distribution function; closed form where one exists,
/// monotone numeric inversion otherwise.
double quantile(const DistributionSpec& spec, double u);

TailClass tail_class(const DistributionSpec& spec) noexcept;

/// Limit of the failure rate f / F̄: +inf for short, the exponential rate
/// for medium, 0 for long tails.
double limiting_failure_rate(const DistributionSpec& spec) noexcept;

}  // namespace estail
