#include "estail/distributions.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "estail/errors.hpp"

namespace estail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(fmt::format("{} must be positive and finite, got {}", what, v));
}

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw DomainError(fmt::format("cannot parse parameter '{}'", s));
  return v;
}

double std_normal_survival(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// Monotone inversion of a continuous distribution function on its support
// (lo_support, +inf): bracket by doubling, then bisect to machine precision.
template <class Cdf, class Surv>
double invert(Cdf&& cdf_fn, Surv&& surv_fn, double u, bool positive_support) {
  auto below = [&](double x) {
    // True when F(x) < u; compares in whichever tail is better conditioned.
    return u <= 0.5 ? cdf_fn(x) < u : surv_fn(x) > 1.0 - u;
  };
  double lo, hi;
  if (positive_support) {
    lo = 0.0;
    hi = 1.0;
    while (below(hi)) {
      lo = hi;
      hi *= 2.0;
    }
  } else {
    lo = -1.0;
    hi = 1.0;
    while (!below(lo)) {
      hi = lo;
      lo *= 2.0;
    }
    while (below(hi)) {
      lo = hi;
      hi *= 2.0;
    }
  }
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (below(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double normal_quantile(double u) {
  return invert([](double x) { return std_normal_survival(-x); }, std_normal_survival, u, false);
}

double gamma_shape_quantile(double shape, double u) {
  return invert([shape](double x) { return boost::math::gamma_p(shape, x); },
                [shape](double x) { return boost::math::gamma_q(shape, x); }, u, true);
}

}  // namespace

DistributionSpec::DistributionSpec(Family f, double p0, double p1) : family_(f), params_{p0, p1} {}

DistributionSpec DistributionSpec::exponential(double theta) {
  require_positive(theta, "exponential rate");
  return {Family::Exponential, theta, 0.0};
}
DistributionSpec DistributionSpec::logistic() { return {Family::Logistic, 0.0, 0.0}; }
DistributionSpec DistributionSpec::gamma(double shape) {
  require_positive(shape, "gamma shape");
  return {Family::Gamma, shape, 0.0};
}
DistributionSpec DistributionSpec::uniform01() { return {Family::Uniform01, 0.0, 0.0}; }
DistributionSpec DistributionSpec::normal() { return {Family::Normal, 0.0, 0.0}; }
DistributionSpec DistributionSpec::lognormal() { return {Family::Lognormal, 0.0, 0.0}; }
DistributionSpec DistributionSpec::gumbel() { return {Family::Gumbel, 0.0, 0.0}; }
DistributionSpec DistributionSpec::cauchy() { return {Family::Cauchy, 0.0, 0.0}; }
DistributionSpec DistributionSpec::student_t(double df) {
  require_positive(df, "t degrees of freedom");
  return {Family::StudentT, df, 0.0};
}
DistributionSpec DistributionSpec::pareto_shifted(double gamma) {
  require_positive(gamma, "Pareto index");
  return {Family::ParetoShifted, gamma, 0.0};
}
DistributionSpec DistributionSpec::weibull(double gamma) {
  require_positive(gamma, "Weibull shape");
  return {Family::Weibull, gamma, 0.0};
}
DistributionSpec DistributionSpec::log_gamma(double shape, double scale) {
  require_positive(shape, "log-gamma shape");
  require_positive(scale, "log-gamma scale");
  return {Family::LogGamma, shape, scale};
}

std::string_view valid_family_names() noexcept {
  return "exp:THETA, logistic, gamma:SHAPE, uniform, normal, lognormal, gumbel, cauchy, t:DF, "
         "pareto:GAMMA, weibull:GAMMA, loggamma:SHAPE,SCALE";
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (true) {
      const auto comma = rest.find(',');
      args.push_back(parse_number(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  auto arity = [&](std::size_t want) {
    if (args.size() != want)
      throw DomainError(fmt::format("distribution '{}' takes {} parameter(s), got {}", name,
                                    want, args.size()));
  };

  if (name == "exp" || name == "exponential") {
    if (args.empty()) return exponential(1.0);
    arity(1);
    return exponential(args[0]);
  }
  if (name == "logistic") return arity(0), logistic();
  if (name == "gamma") return arity(1), gamma(args[0]);
  if (name == "uniform" || name == "unif") return arity(0), uniform01();
  if (name == "normal" || name == "norm") return arity(0), normal();
  if (name == "lognormal" || name == "lnorm") return arity(0), lognormal();
  if (name == "gumbel" || name == "extval") return arity(0), gumbel();
  if (name == "cauchy") return arity(0), cauchy();
  if (name == "t") return arity(1), student_t(args[0]);
  if (name == "pareto") return arity(1), pareto_shifted(args[0]);
  if (name == "weibull") return arity(1), weibull(args[0]);
  if (name == "loggamma") return arity(2), log_gamma(args[0], args[1]);
  throw DomainError(
      fmt::format("unknown distribution '{}'; valid families: {}", name, valid_family_names()));
}

std::string DistributionSpec::to_string() const {
  switch (family_) {
    case Family::Exponential: return fmt::format("exp:{}", params_[0]);
    case Family::Logistic: return "logistic";
    case Family::Gamma: return fmt::format("gamma:{}", params_[0]);
    case Family::Uniform01: return "uniform";
    case Family::Normal: return "normal";
    case Family::Lognormal: return "lognormal";
    case Family::Gumbel: return "gumbel";
    case Family::Cauchy: return "cauchy";
    case Family::StudentT: return fmt::format("t:{}", params_[0]);
    case Family::ParetoShifted: return fmt::format("pareto:{}", params_[0]);
    case Family::Weibull: return fmt::format("weibull:{}", params_[0]);
    case Family::LogGamma: return fmt::format("loggamma:{},{}", params_[0], params_[1]);
  }
  return "?";
}

std::string DistributionSpec::label() const {
  switch (family_) {
    case Family::Exponential: return fmt::format("E({})", params_[0]);
    case Family::Logistic: return "Lgis";
    case Family::Gamma: return fmt::format("G({})", params_[0]);
    case Family::Uniform01: return "Unif(0,1)";
    case Family::Normal: return "Normal";
    case Family::Lognormal: return "Lnorm";
    case Family::Gumbel: return "ExtVal";
    case Family::Cauchy: return "Cauchy";
    case Family::StudentT: return fmt::format("t({})", params_[0]);
    case Family::ParetoShifted: return fmt::format("P({})", params_[0]);
    case Family::Weibull: return fmt::format("W({})", params_[0]);
    case Family::LogGamma: return fmt::format("LG({},{})", params_[0], params_[1]);
  }
  return "?";
}

void sample_into(const DistributionSpec& spec, RandomStream& rng, std::span<double> out) {
  const double a = spec.param(0);
  const double b = spec.param(1);
  switch (spec.family()) {
    case Family::Exponential:
      for (double& x : out) x = -std::log(rng.uniform()) / a;
      return;
    case Family::Logistic:
      for (double& x : out) {
        const double u = rng.uniform();
        x = std::log(u / (1.0 - u));
      }
      return;
    case Family::Gamma:
      for (double& x : out) x = rng.gamma(a);
      return;
    case Family::Uniform01:
      for (double& x : out) x = rng.uniform();
      return;
    case Family::Normal:
      for (double& x : out) x = rng.normal();
      return;
    case Family::Lognormal:
      for (double& x : out) x = std::exp(rng.normal());
      return;
    case Family::Gumbel:
      for (double& x : out) x = std::log(-std::log(rng.uniform()));
      return;
    case Family::Cauchy:
      for (double& x : out) x = rng.cauchy();
      return;
    case Family::StudentT:
      for (double& x : out) x = rng.student_t(a);
      return;
    case Family::ParetoShifted:
      for (double& x : out) {
        const double u = rng.uniform();
        x = std::pow(u / (1.0 - u), 1.0 / a);
      }
      return;
    case Family::Weibull:
      for (double& x : out) x = std::pow(-std::log(rng.uniform()), 1.0 / a);
      return;
    case Family::LogGamma:
      for (double& x : out) x = std::exp(b * rng.gamma(a));
      return;
  }
}

std::vector<double> sample(const DistributionSpec& spec, std::size_t n, SeedSpec seed) {
  std::vector<double> out(n);
  RandomStream rng(seed);
  sample_into(spec, rng, out);
  return out;
}

double survival(const DistributionSpec& spec, double x) {
  const double a = spec.param(0);
  const double b = spec.param(1);
  if (std::isnan(x)) throw DomainError("survival of NaN");
  switch (spec.family()) {
    case Family::Exponential: return x <= 0.0 ? 1.0 : std::exp(-a * x);
    case Family::Logistic: return 1.0 / (1.0 + std::exp(x));
    case Family::Gamma:
      if (x <= 0.0) return 1.0;
      if (std::isinf(x)) return 0.0;
      return boost::math::gamma_q(a, x);
    case Family::Uniform01: return x <= 0.0 ? 1.0 : (x >= 1.0 ? 0.0 : 1.0 - x);
    case Family::Normal: return std_normal_survival(x);
    case Family::Lognormal: return x <= 0.0 ? 1.0 : std_normal_survival(std::log(x));
    case Family::Gumbel: return std::exp(-std::exp(x));
    case Family::Cauchy: return 0.5 - std::atan(x) / std::numbers::pi;
    case Family::StudentT:
      if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
      return boost::math::cdf(boost::math::complement(boost::math::students_t(a), x));
    case Family::ParetoShifted: return x <= 0.0 ? 1.0 : 1.0 / (1.0 + std::pow(x, a));
    case Family::Weibull: return x <= 0.0 ? 1.0 : std::exp(-std::pow(x, a));
    case Family::LogGamma:
      if (x <= 1.0) return 1.0;
      if (std::isinf(x)) return 0.0;
      return boost::math::gamma_q(a, std::log(x) / b);
  }
  return kInf;
}

double cdf(const DistributionSpec& spec, double x) {
  switch (spec.family()) {
    case Family::Gamma:
      if (x <= 0.0) return 0.0;
      if (std::isinf(x)) return 1.0;
      return boost::math::gamma_p(spec.param(0), x);
    case Family::Normal: return std_normal_survival(-x);
    case Family::Gumbel: return -std::expm1(-std::exp(x));
    case Family::Exponential: return x <= 0.0 ? 0.0 : -std::expm1(-spec.param(0) * x);
    default: return 1.0 - survival(spec, x);
  }
}

double quantile(const DistributionSpec& spec, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError(fmt::format("quantile needs u in (0, 1), got {}", u));
  const double a = spec.param(0);
  const double b = spec.param(1);
  switch (spec.family()) {
    case Family::Exponential: return -std::log1p(-u) / a;
    case Family::Logistic: return std::log(u / (1.0 - u));
    case Family::Gamma: return gamma_shape_quantile(a, u);
    case Family::Uniform01: return u;
    case Family::Normal: return normal_quantile(u);
    case Family::Lognormal: return std::exp(normal_quantile(u));
    case Family::Gumbel: return std::log(-std::log1p(-u));
    case Family::Cauchy: return std::tan(std::numbers::pi * (u - 0.5));
    case Family::StudentT:
      return invert([&](double x) { return 1.0 - survival(spec, x); },
                    [&](double x) { return survival(spec, x); }, u, false);
    case Family::ParetoShifted: return std::pow(u / (1.0 - u), 1.0 / a);
    case Family::Weibull: return std::pow(-std::log1p(-u), 1.0 / a);
    case Family::LogGamma: return std::exp(b * gamma_shape_quantile(a, u));
  }
  return kInf;
}

TailClass tail_class(const DistributionSpec& spec) noexcept {
  switch (spec.family()) {
    case Family::Exponential:
    case Family::Logistic:
    case Family::Gamma: return TailClass::Medium;
    case Family::Uniform01:
    case Family::Normal:
    case Family::Gumbel: return TailClass::Short;
    case Family::Lognormal:
    case Family::Cauchy:
    case Family::StudentT:
    case Family::ParetoShifted:
    case Family::LogGamma: return TailClass::Long;
    case Family::Weibull:
      if (spec.param(0) > 1.0) return TailClass::Short;
      if (spec.param(0) < 1.0) return TailClass::Long;
      return TailClass::Medium;
  }
  return TailClass::Medium;
}

double limiting_failure_rate(const DistributionSpec& spec) noexcept {
  switch (tail_class(spec)) {
    case TailClass::Short: return kInf;
    case TailClass::Long: return 0.0;
    case TailClass::Medium:
      return spec.family() == Family::Exponential ? spec.param(0) : 1.0;
  }
  return 0.0;
}

}  // namespace estail
