#include "evt/norming.hpp"

#include <cmath>
#include <string>

#include "evt/error.hpp"
#include "evt/format.hpp"
#include "evt/numerics.hpp"

namespace evt {

namespace {

constexpr double kLog2 = 0.6931471805599453;

double scale_at(const DistributionSpec& dist, double b, ScaleRule rule) {
  const auto comp = von_mises_components(dist, b);
  if (rule == ScaleRule::AuxiliaryFunction) return comp.f;
  if (!(comp.g > 0.0)) throw DomainError("norming: g(b) <= 0 at b=" + format_double(b));
  return comp.f / comp.g;
}

void require_large_n(double c, SampleSize n, const char* who) {
  if (!(n.log() / c > 1.0)) {
    throw DomainError(std::string(who) + ": needs log n / c > 1, got log n=" + format_double(n.log()) +
                      ", c=" + format_double(c));
  }
}

}  // namespace

SampleSize SampleSize::of(std::int64_t n) {
  if (n < 2) throw DomainError("sample size n must be at least 2, got " + std::to_string(n));
  return SampleSize(std::log(static_cast<double>(n)), n);
}

SampleSize SampleSize::from_log(double log_n) {
  if (!(log_n >= kLog2) || !std::isfinite(log_n)) {
    throw DomainError("log n must be finite and at least log 2, got " + format_double(log_n));
  }
  return SampleSize(log_n, std::nullopt);
}

double SampleSize::value() const noexcept {
  if (count_) return static_cast<double>(*count_);
  return std::exp(log_n_);
}

NormingPair norming_exact(const DistributionSpec& dist, SampleSize n, const NormingOptions& options) {
  // log of 1/n, or of 1 - exp(-1/n).
  const double log_q = options.centering == Centering::InverseN ? -n.log() : numerics::log1mexp(-std::exp(-n.log()));
  const double b = quantile_log_tail(dist, log_q);
  return NormingPair{n, scale_at(dist, b, options.scale), b, NormingMethod::ExactQuantile};
}

NormingPair norming_weibull_closed(double c, double p, double alpha, const SlowlyVarying& ell, SampleSize n) {
  if (!(c > 0.0) || !(p > 0.0)) throw DomainError("norming_weibull_closed: c and p must be positive");
  require_large_n(c, n, "norming_weibull_closed");
  const double u = n.log() / c;
  if (p == 1.0) {
    const double b = u + (alpha / c) * std::log(u) + ell.log_value(u) / c;
    return NormingPair{n, 1.0 / c, b, NormingMethod::ClosedForm};
  }
  const double root = std::pow(u, 1.0 / p);
  const double step = std::pow(u, 1.0 / p - 1.0) / p;
  const double b = root + step * (alpha / (p * c) * std::log(u) + ell.log_value(root) / c);
  return NormingPair{n, step / c, b, NormingMethod::ClosedForm};
}

NormingPair norming_logweibull_closed(double c, double p, double alpha, const SlowlyVarying& ell, SampleSize n) {
  if (!(c > 0.0)) throw DomainError("norming_logweibull_closed: c must be positive");
  if (!(p > 1.0)) throw DomainError("norming_logweibull_closed: p must exceed 1, got " + format_double(p));
  require_large_n(c, n, "norming_logweibull_closed");
  const double leading = n.log() / c;
  const double upper = std::pow(leading, 1.0 / p);
  // p * int alpha(e^s) s^(p-1) ds with alpha(e^s) = -(alpha + delta(e^s)) / (c p s^(p-1));
  // delta(e^s) = beta / s is dropped on s < 1 where ell is not defined.
  double integral = alpha * upper;
  if (!ell.is_constant() && upper > 1.0) {
    integral += numerics::integrate([&](double s) { return ell.index_function(std::exp(s)); }, 1.0, upper);
  }
  const double shift = integral / c;
  const double y = leading + shift;
  if (!(y > 0.0)) throw DomainError("norming_logweibull_closed: log^p b is not positive");
  const double log_b = std::pow(y, 1.0 / p);
  const double b = std::exp(log_b);
  const double f = b * std::pow(log_b, 1.0 - p) / (c * p);
  const double delta = ell.is_constant() ? 0.0 : ell.index_function(b);
  const double g = (alpha + delta) == 0.0 ? 1.0 : 1.0 - (alpha + delta) / (c * p * std::pow(log_b, p - 1.0));
  if (!(g > 0.0)) throw DomainError("norming_logweibull_closed: g(b) <= 0");
  return NormingPair{n, f / g, b, NormingMethod::ClosedForm};
}

NormingPair norming_closed(const DistributionSpec& dist, SampleSize n) {
  if (dist.as<ExponentialUnit>()) return norming_weibull_closed(1.0, 1.0, 0.0, SlowlyVarying::constant(1.0), n);
  if (const auto* w = dist.as<WeibullLike>()) return norming_weibull_closed(w->c, w->p, w->alpha, w->ell, n);
  if (const auto* w = dist.as<LogWeibullLike>()) return norming_logweibull_closed(w->c, w->p, w->alpha, w->ell, n);
  throw DomainError("no closed-form norming for " + dist.label());
}

WeibullLocationReadings weibull_example_location(double c, double p, SampleSize n) {
  require_large_n(c, n, "weibull_example_location");
  const double u = n.log() / c;
  const double root = std::pow(u, 1.0 / p);
  const double step = std::pow(u, 1.0 / p - 1.0);
  return {root + std::log(1.0 / c) * step / (p * c), root + std::log(step / c) / (p * c)};
}

double asymptotic_iterate(const FixedPointCorrection& correction, double u, int iterations) {
  if (iterations < 1) throw DomainError("asymptotic_iterate: iterations must be at least 1");
  double y = u;
  double last_step = -1.0;
  int growth = 0;
  for (int j = 0; j < iterations; ++j) {
    const double next = u + correction(y, u);
    if (!std::isfinite(next)) {
      throw DivergenceError("asymptotic_iterate: iterate " + std::to_string(j + 1) + " is not finite");
    }
    const double step = std::abs(next - y);
    if (last_step >= 0.0 && step > last_step) {
      if (++growth >= 2) {
        throw DivergenceError("asymptotic_iterate: defect grew twice in a row at iterate " + std::to_string(j + 1));
      }
    } else {
      growth = 0;
    }
    last_step = step;
    y = next;
  }
  return y;
}

NormingPair norming_iterated(const DistributionSpec& dist, SampleSize n, int iterations) {
  double b = 0.0;
  if (const auto* w = dist.as<WeibullLike>()) {
    // c y = log n + (alpha/p) log y + log ell(y^(1/p)), y = b^p.
    require_large_n(w->c, n, "norming_iterated");
    const auto corr = [w](double y, double) {
      if (!(y > 0.0)) throw DivergenceError("norming_iterated: iterate left y > 0");
      return (w->alpha / (w->p * w->c)) * std::log(y) + w->ell.log_value(std::pow(y, 1.0 / w->p)) / w->c;
    };
    b = std::pow(asymptotic_iterate(corr, n.log() / w->c, iterations), 1.0 / w->p);
  } else if (const auto* w = dist.as<LogWeibullLike>()) {
    // c y = log n + alpha y^(1/p) + log ell(exp(y^(1/p))), y = log^p b.
    require_large_n(w->c, n, "norming_iterated");
    const auto corr = [w](double y, double) {
      if (!(y > 0.0)) throw DivergenceError("norming_iterated: iterate left y > 0");
      const double log_b = std::pow(y, 1.0 / w->p);
      return (w->alpha * log_b + w->ell.log_value(std::exp(log_b))) / w->c;
    };
    b = std::exp(std::pow(asymptotic_iterate(corr, n.log() / w->c, iterations), 1.0 / w->p));
  } else if (dist.as<ExponentialUnit>()) {
    b = n.log();
  } else {
    throw DomainError("norming_iterated: no location equation for " + dist.label());
  }
  if (!(b >= dist.x0())) throw DomainError("norming_iterated: iterated b falls below x0 for " + dist.label());
  return NormingPair{n, scale_at(dist, b, ScaleRule::AuxiliaryOverG), b, NormingMethod::AsymptoticIteration};
}

TypesGap types_equivalence_gap(const NormingPair& pair, const NormingPair& other) {
  if (!(pair.n == other.n)) {
    throw MismatchError("types_equivalence_gap: pairs refer to different n (log n " + format_double(pair.n.log()) +
                        " vs " + format_double(other.n.log()) + ")");
  }
  return TypesGap{std::abs(pair.a / other.a - 1.0), std::abs(pair.b - other.b) / pair.a};
}

}  // namespace evt
