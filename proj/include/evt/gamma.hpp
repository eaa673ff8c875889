#pragma once

#include <functional>

#include "evt/norming.hpp"
#include "evt/tails.hpp"

namespace evt {

enum class GammaRoute { ExactTailRatio, Quadrature, ClosedFormWeibull };

/// gamma_n(x) = -log[(1 - F(b_n + a_n x)) / (1 - F(b_n))].
struct GammaValue {
  double x;
  SampleSize n;
  double value;
  GammaRoute route;
};

/// Log-tail difference between b and b + a x. DomainError if b + a x < x0.
GammaValue gamma_exact(const DistributionSpec& dist, const NormingPair& pair, double x);

/// int_0^x (g(b+av) f(b) / (f(b+av) g(b)) - 1) dv - log(c(b+ax)/c(b)) + x.
GammaValue gamma_quadrature(const DistributionSpec& dist, const NormingPair& pair, double x);

/// log n ((1 + x/(p log n))^p - 1), the pure Weibull exponent.
GammaValue gamma_closed_weibull(double p, SampleSize n, double x);

/// Predicted gamma_n(x) - x for generalized Weibull-like tails:
/// (p-1) x^2 / (2 p log n) + int_0^x alpha(b + C b^(1-p) v) dv.
double correction_generalized_weibull(double C, double p, const std::function<double(double)>& alpha_fn,
                                      const NormingPair& pair, double x);

/// ((p-1) x^2 / 2 - alpha x) / (p log n).
double correction_weibull_like(double p, double alpha, SampleSize n, double x);

/// Predicted gamma_n(x) - x for generalized log-Weibull-like tails:
/// C^(1/p) p^((1-p)/p) x^2 log^(1/p-1) n / 2 + int_0^x alpha(b + f(b) v) dv,
/// f(b) = C b log^(1-p) b.
double correction_logweibull(double C, double p, const std::function<double(double)>& alpha_fn,
                             const NormingPair& pair, double x);

/// alpha(t) = g(t) - 1 of a built-in Weibull-like or log-Weibull-like tail.
std::function<double(double)> alpha_function(const DistributionSpec& dist);

}  // namespace evt
