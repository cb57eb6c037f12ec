#include "estail/special.hpp"

#include <cmath>

#include "estail/errors.hpp"

namespace estail {
namespace {

void check_shape(int k) {
  if (k < 1) throw DomainError("Erlang shape k must be a positive integer");
}

// e^{-x} x^i / i!, evaluated in log space.
double poisson_term(double x, int i) {
  return std::exp(-x + i * std::log(x) - std::lgamma(i + 1.0));
}

}  // namespace

GammaLaw::GammaLaw(double shape_, double scale_) : shape(shape_), scale(scale_) {
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) || !std::isfinite(scale))
    throw DomainError("gamma shape and scale must be positive and finite");
}

double gamma_cdf(double x, int k) {
  check_shape(k);
  if (!(x >= 0.0)) throw DomainError("gamma_cdf needs x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (k == 1) return -std::expm1(-x);

  if (x < k) {
    // Lower tail: e^{-x} sum_{i>=k} x^i / i!, ratio x / (k + j) < 1.
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < 10000; ++j) {
      term *= x / (k + j);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return poisson_term(x, k) * sum;
  }

  // Upper tail: finite sum, accumulated from its largest term downward.
  double term = poisson_term(x, k - 1);
  double upper = term;
  for (int i = k - 1; i > 0; --i) {
    term *= i / x;
    upper += term;
    if (term < upper * 1e-17) break;
  }
  return 1.0 - upper;
}

double gamma_pdf(double x, int k) {
  check_shape(k);
  if (x < 0.0) return 0.0;
  if (x == 0.0) return k == 1 ? 1.0 : 0.0;
  return std::exp(-x + (k - 1) * std::log(x) - std::lgamma(static_cast<double>(k)));
}

double gamma_quantile(double p, int k) {
  check_shape(k);
  if (!(p > 0.0 && p < 1.0)) throw DomainError("gamma_quantile needs p in (0, 1)");
  if (k == 1) return -std::log1p(-p);

  double lo = 0.0;
  double hi = static_cast<double>(k);
  while (gamma_cdf(hi, k) < p) {
    lo = hi;
    hi *= 2.0;
  }

  // Newton on the closed-form CDF, falling back to bisection whenever a step
  // leaves the bracket.
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 300; ++iter) {
    const double f = gamma_cdf(x, k) - p;
    if (std::abs(f) < 1e-15) return x;
    if (f < 0.0)
      lo = x;
    else
      hi = x;
    const double d = gamma_pdf(x, k);
    double next = d > 0.0 ? x - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * x) return next;
    x = next;
  }
  return x;
}

}  // namespace estail
