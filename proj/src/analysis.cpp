#include "evt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "evt/error.hpp"
#include "evt/format.hpp"
#include "evt/gamma.hpp"
#include "evt/numerics.hpp"

namespace evt {

namespace {

// Rethrows the active evt::Error with a location suffix, keeping its type.
[[noreturn]] void rethrow_annotated(const std::string& where) {
  try {
    throw;
  } catch (const QuadratureError& e) {
    throw QuadratureError(e.what() + where);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(e.what() + where);
  } catch (const DivergenceError& e) {
    throw DivergenceError(e.what() + where);
  } catch (const DegenerateError& e) {
    throw DegenerateError(e.what() + where);
  } catch (const MismatchError& e) {
    throw MismatchError(e.what() + where);
  } catch (const DomainError& e) {
    throw DomainError(e.what() + where);
  } catch (const ParseError& e) {
    throw ParseError(e.what() + where);
  }
}

std::string location(SampleSize n, double x) {
  return " [at log n=" + format_double(n.log()) + ", x=" + format_double(x) + "]";
}

double pointwise_error(const DistributionSpec& dist, const NormingPair& pair, const ApproximantKind& kind, double x) {
  try {
    return std::abs(eval_point(dist, pair, kind, x).signed_error);
  } catch (const Error&) {
    rethrow_annotated(location(pair.n, x));
  }
}

}  // namespace

ErrorCurve error_curve(const DistributionSpec& dist, const ApproximantKind& approximant, const ErrorMetric& metric,
                       std::span<const SampleSize> n_grid, const CurveOptions& options) {
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (!(n_grid[i - 1] < n_grid[i])) throw DomainError("error_curve: n grid must be strictly increasing");
  }
  ErrorCurve curve{dist.label(), approximant, metric, {}};
  curve.points.reserve(n_grid.size());
  for (const SampleSize& n : n_grid) {
    const NormingPair pair = norming_exact(dist, n, options.norming);
    double error = 0.0;
    if (const auto* at = std::get_if<AtPoint>(&metric)) {
      error = pointwise_error(dist, pair, approximant, at->x);
    } else {
      const auto& sup = std::get<SupOnGrid>(metric);
      const auto xs = guarded_grid(dist, pair, sup.lo, sup.hi, sup.steps, options.guard_margin);
      error = kernels::max_indexed(
          xs.size(), [&](std::size_t i) { return pointwise_error(dist, pair, approximant, xs[i]); },
          options.execution);
    }
    if (!std::isfinite(error)) throw DegenerateError("error_curve: non-finite error" + location(n, 0.0));
    curve.points.push_back(ErrorPoint{n, error});
  }
  return curve;
}

std::string rate_model_name(RateModel model) {
  return model == RateModel::PowerInN ? "power_in_n" : "power_in_log_n";
}

RateFit fit_rate(const ErrorCurve& curve, RateModel model) {
  const std::size_t m = curve.points.size();
  if (m < 3) throw DegenerateError("fit_rate: needs at least 3 points, got " + std::to_string(m));
  std::vector<double> xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& pt = curve.points[i];
    if (!(pt.error > 0.0)) {
      throw DegenerateError("fit_rate: error is zero at log n=" + format_double(pt.n.log()));
    }
    xs[i] = model == RateModel::PowerInN ? pt.n.log() : std::log(pt.n.log());
    ys[i] = std::log(pt.error);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw DegenerateError("fit_rate: all n coincide");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double r2 = 1.0;
  if (syy > 0.0) r2 = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return RateFit{model, slope, intercept, r2, m};
}

double corollary_ratio(const DistributionSpec& dist, const NormingPair& pair, double x) {
  const double lambda = gumbel_cdf(x);
  const double predicted = lambda * std::exp(-x) * (gamma_exact(dist, pair, x).value - x);
  if (predicted == 0.0) throw DegenerateError("corollary_ratio: predicted correction vanishes at x=" + format_double(x));
  return (exact_max_cdf(dist, pair, x) - lambda) / predicted;
}

double weighted_residual(const DistributionSpec& dist, SampleSize n, double rho, double a_value, double eps,
                         const ResidualOptions& options) {
  if (!(rho < 0.0)) throw DomainError("weighted_residual: rho must be negative, got " + format_double(rho));
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("weighted_residual: eps must lie in (0, 1)");
  if (!(a_value != 0.0) || !std::isfinite(a_value)) throw DomainError("weighted_residual: A(n) must be nonzero");
  const NormingPair pair = norming_exact(dist, n, NormingOptions{Centering::ExpInverseN, ScaleRule::AuxiliaryOverG});
  const auto xs = guarded_grid(dist, pair, options.grid.lo, options.grid.hi, options.grid.steps, options.guard_margin);
  return kernels::max_indexed(
      xs.size(),
      [&](std::size_t i) {
        const double x = xs[i];
        try {
          const double lambda = gumbel_cdf(x);
          const double inner = (exact_max_cdf(dist, pair, x) - lambda) / a_value +
                               std::exp(-x + rho * x) * lambda / rho;
          return std::exp((1.0 - eps) * x) * std::abs(inner);
        } catch (const Error&) {
          rethrow_annotated(location(n, x));
        }
      },
      options.execution);
}

std::vector<double> simulate_max(const DistributionSpec& dist, SampleSize n, std::int64_t replications,
                                 std::uint64_t seed, const SimulationOptions& options) {
  if (replications < 1) throw DomainError("simulate_max: replications must be at least 1");
  const NormingPair pair = norming_exact(dist, n);
  const double log_top = log_tail(dist, dist.x0());
  const kernels::CounterRng rng(seed);
  const auto count = n.count();
  const bool direct = count && *count <= options.direct_draw_limit;

  return kernels::map_indexed(
      static_cast<std::size_t>(replications),
      [&](std::size_t r) {
        // Largest draw has the smallest tail uniform.
        double log_v = 0.0;
        if (direct) {
          double v_min = 1.0;
          for (std::int64_t d = 0; d < *count; ++d) v_min = std::min(v_min, rng.uniform(r, d));
          log_v = std::log(v_min);
        } else {
          const double u = rng.uniform(r, 0);
          log_v = numerics::log1mexp(std::log1p(-u) / n.value());
        }
        const double m = log_v >= log_top ? dist.x0() : quantile_log_tail(dist, log_v);
        return (m - pair.b) / pair.a;
      },
      options.execution);
}

double empirical_cdf(std::span<const double> sample, double x) {
  if (sample.empty()) throw DegenerateError("empirical_cdf: empty sample");
  const auto below = std::count_if(sample.begin(), sample.end(), [x](double v) { return v <= x; });
  return static_cast<double>(below) / static_cast<double>(sample.size());
}

}  // namespace evt
