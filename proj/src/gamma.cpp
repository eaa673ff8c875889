#include "evt/gamma.hpp"

#include <cmath>
#include <string>

#include "evt/error.hpp"
#include "evt/format.hpp"
#include "evt/numerics.hpp"

namespace evt {

namespace {

double evaluation_point(const DistributionSpec& dist, const NormingPair& pair, double x) {
  const double t = pair.b + pair.a * x;
  if (!(t >= dist.x0())) {
    throw DomainError("gamma: b + a x = " + format_double(t) + " is below x0 = " + format_double(dist.x0()) +
                      " (need x >= " + format_double((dist.x0() - pair.b) / pair.a) + ")");
  }
  return t;
}

void guard_taylor_range(double p, SampleSize n, double x, const char* who) {
  if (!(std::abs(x) <= p * n.log() / 2.0)) {
    throw DomainError(std::string(who) + ": |x| = " + format_double(std::abs(x)) + " exceeds p log n / 2 = " +
                      format_double(p * n.log() / 2.0));
  }
}

}  // namespace

GammaValue gamma_exact(const DistributionSpec& dist, const NormingPair& pair, double x) {
  const double t = evaluation_point(dist, pair, x);
  return GammaValue{x, pair.n, -log_tail_difference(dist, pair.b, t), GammaRoute::ExactTailRatio};
}

GammaValue gamma_quadrature(const DistributionSpec& dist, const NormingPair& pair, double x) {
  const double t = evaluation_point(dist, pair, x);
  const auto at_b = von_mises_components(dist, pair.b);
  double c_term = 0.0;
  if (const auto* v = dist.as<GeneralizedVonMises>()) c_term = std::log(v->c(t) / v->c(pair.b));
  if (std::abs(pair.a * at_b.g / at_b.f - 1.0) > 1e-12) {
    // Scale other than f(b)/g(b): integrate g/f directly in steps of a.
    const auto raw = [&](double v) {
      const auto at_v = von_mises_components(dist, pair.b + pair.a * v);
      return at_v.g / at_v.f;
    };
    return GammaValue{x, pair.n, pair.a * numerics::integrate(raw, 0.0, x) - c_term, GammaRoute::Quadrature};
  }
  const auto integrand = [&](double v) {
    const auto at_v = von_mises_components(dist, pair.b + pair.a * v);
    return (at_v.g * at_b.f) / (at_v.f * at_b.g) - 1.0;
  };
  return GammaValue{x, pair.n, numerics::integrate(integrand, 0.0, x) - c_term + x, GammaRoute::Quadrature};
}

GammaValue gamma_closed_weibull(double p, SampleSize n, double x) {
  if (!(p > 0.0)) throw DomainError("gamma_closed_weibull: p must be positive");
  if (p == 1.0) return GammaValue{x, n, x, GammaRoute::ClosedFormWeibull};
  const double h = x / (p * n.log());
  if (!(1.0 + h > 0.0)) {
    throw DomainError("gamma_closed_weibull: 1 + x/(p log n) <= 0 at x = " + format_double(x));
  }
  // (1+h)^p - 1 without cancellation.
  return GammaValue{x, n, n.log() * std::expm1(p * std::log1p(h)), GammaRoute::ClosedFormWeibull};
}

double correction_generalized_weibull(double C, double p, const std::function<double(double)>& alpha_fn,
                                      const NormingPair& pair, double x) {
  if (!(p > 0.0) || !(C > 0.0)) throw DomainError("correction_generalized_weibull: C and p must be positive");
  if (!(pair.b > 0.0)) throw DomainError("correction_generalized_weibull: b_n must be positive");
  guard_taylor_range(p, pair.n, x, "correction_generalized_weibull");
  const double step = C * std::pow(pair.b, 1.0 - p);
  const double quadratic = (p - 1.0) * x * x / (2.0 * p * pair.n.log());
  if (!alpha_fn) return quadratic;
  return quadratic + numerics::integrate([&](double v) { return alpha_fn(pair.b + step * v); }, 0.0, x);
}

double correction_weibull_like(double p, double alpha, SampleSize n, double x) {
  if (!(p > 0.0)) throw DomainError("correction_weibull_like: p must be positive");
  if (!(n.log() >= std::log(3.0))) throw DomainError("correction_weibull_like: needs n >= 3");
  guard_taylor_range(p, n, x, "correction_weibull_like");
  return ((p - 1.0) * x * x / 2.0 - alpha * x) / (p * n.log());
}

double correction_logweibull(double C, double p, const std::function<double(double)>& alpha_fn,
                             const NormingPair& pair, double x) {
  if (!(p > 1.0)) {
    throw DomainError("correction_logweibull: p must exceed 1 (p <= 1 is outside the Gumbel domain), got " +
                      format_double(p));
  }
  if (!(C > 0.0)) throw DomainError("correction_logweibull: C must be positive");
  if (!(pair.b > 1.0)) throw DomainError("correction_logweibull: b_n must exceed 1");
  guard_taylor_range(p, pair.n, x, "correction_logweibull");
  const double quadratic =
      0.5 * std::pow(C, 1.0 / p) * std::pow(p, (1.0 - p) / p) * x * x * std::pow(pair.n.log(), 1.0 / p - 1.0);
  if (!alpha_fn) return quadratic;
  const double step = C * pair.b * std::pow(std::log(pair.b), 1.0 - p);
  return quadratic + numerics::integrate([&](double v) { return alpha_fn(pair.b + step * v); }, 0.0, x);
}

std::function<double(double)> alpha_function(const DistributionSpec& dist) {
  if (dist.as<WeibullLike>() || dist.as<LogWeibullLike>()) {
    return [dist](double t) { return von_mises_components(dist, t).g - 1.0; };
  }
  throw DomainError("alpha_function: only Weibull-like and log-Weibull-like tails have a built-in alpha(t)");
}

}  // namespace evt
