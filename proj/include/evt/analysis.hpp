#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "evt/approx.hpp"
#include "evt/kernels.hpp"
#include "evt/norming.hpp"
#include "evt/tails.hpp"

namespace evt {

struct SupOnGrid {
  double lo = -2.0;
  double hi = 6.0;
  int steps = 161;
};
struct AtPoint {
  double x;
};
using ErrorMetric = std::variant<SupOnGrid, AtPoint>;

struct ErrorPoint {
  SampleSize n;
  double error;
};

struct ErrorCurve {
  std::string dist_label;
  ApproximantKind approximant;
  ErrorMetric metric;
  std::vector<ErrorPoint> points;
};

struct CurveOptions {
  NormingOptions norming{};
  // Grid points need gamma_n(x) >= -log n + guard_margin.
  double guard_margin = 0.5;
  kernels::Execution execution = kernels::Execution::Parallel;
};

/// |exact_max_cdf - approximant| per n, either at one x or as the sup over the
/// guarded grid. n_grid must be strictly increasing.
ErrorCurve error_curve(const DistributionSpec& dist, const ApproximantKind& approximant, const ErrorMetric& metric,
                       std::span<const SampleSize> n_grid, const CurveOptions& options = {});

enum class RateModel { PowerInN, PowerInLogN };

struct RateFit {
  RateModel model;
  double exponent;
  double intercept;
  double r_squared;
  std::size_t points;
};

std::string rate_model_name(RateModel model);

/// Least squares of log error on log n (PowerInN) or log log n (PowerInLogN).
/// DegenerateError with fewer than 3 points or a zero error.
RateFit fit_rate(const ErrorCurve& curve, RateModel model);

/// (exact - Lambda(x)) / (Lambda(x) e^{-x} (gamma_n(x) - x)).
double corollary_ratio(const DistributionSpec& dist, const NormingPair& pair, double x);

struct ResidualOptions {
  SupOnGrid grid{};
  double guard_margin = 0.5;
  kernels::Execution execution = kernels::Execution::Parallel;
};

/// Grid sup of e^{(1-eps)x} |(F^n(a x + b) - Lambda(x))/A + e^{-x+rho x} Lambda(x)/rho|
/// with b = F^{-1}(e^{-1/n}). A lower bound of the sup over the real line.
double weighted_residual(const DistributionSpec& dist, SampleSize n, double rho, double a_value, double eps,
                         const ResidualOptions& options = {});

struct SimulationOptions {
  kernels::Execution execution = kernels::Execution::Parallel;
  // Above this n, the minimum of n uniforms is drawn from its own law
  // (1 - (1-u)^(1/n)) instead of from n separate draws.
  std::int64_t direct_draw_limit = 1'000'000;
};

/// (M - b_n)/a_n for each replication, M the maximum of n draws by inverse
/// transform with the atom at x0. Deterministic in (seed, replication).
std::vector<double> simulate_max(const DistributionSpec& dist, SampleSize n, std::int64_t replications,
                                 std::uint64_t seed, const SimulationOptions& options = {});

/// Fraction of the sample at or below x.
double empirical_cdf(std::span<const double> sample, double x);

}  // namespace evt
