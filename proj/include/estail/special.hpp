#pragma once

namespace estail {

/// Gamma law with positive shape and scale.
struct GammaLaw {
  double shape;
  double scale = 1.0;

  GammaLaw(double shape_, double scale_ = 1.0);
};

/// Erlang(k, 1) distribution function 1 - e^{-x} sum_{i<k} x^i / i!.
double gamma_cdf(double x, int k);

/// Erlang(k, 1) density.
double gamma_pdf(double x, int k);

/// Inverse of gamma_cdf in x, accurate to 1e-10 in probability.
double gamma_quantile(double p, int k);

}  // namespace estail
