#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace evt::numerics {

using ScalarFunction = std::function<double(double)>;

struct QuadratureOptions {
  double abs_tolerance = 1e-12;
  // Floor relative to the magnitude of the integral; keeps the stopping
  // test above binary64 roundoff on long intervals.
  double rel_tolerance = 1e-14;
  int max_depth = 60;
  std::int64_t max_evaluations = 20'000'000;
};

/// Adaptive Simpson quadrature with Richardson correction on [a, b].
/// Returns the signed integral (b < a allowed). Throws QuadratureError when a
/// subinterval hits the depth cap or the evaluation budget is exhausted, or
/// when the integrand produces a non-finite value.
double integrate(const ScalarFunction& f, double a, double b, const QuadratureOptions& options = {});

/// Same as integrate() but splits [a, b] at the given interior breakpoints
/// (points outside (min(a,b), max(a,b)) are ignored).
double integrate_piecewise(const ScalarFunction& f, double a, double b, std::span<const double> breakpoints,
                           const QuadratureOptions& options = {});

struct RootOptions {
  int max_iterations = 200;
};

/// Root of a continuous h on [lo, hi] given h(lo) >= 0 >= h(hi) (or the reverse).
/// The bracket is shrunk to a couple of ulps; the endpoint with the smaller
/// |h| is returned. Throws ConvergenceError when the iteration cap is reached.
double find_root(const ScalarFunction& h, double lo, double hi, const RootOptions& options = {});

/// log(1 - s) for s in [0, 1].
double log1m(double s) noexcept;

/// log(1 - exp(x)) for x <= 0, accurate at both ends.
double log1mexp(double x) noexcept;

/// k-fold composition log(log(...log(t))). Throws DomainError if any
/// intermediate argument is not positive.
double iterated_log(double t, int k);

/// exp applied k times to 1 (k = 0 gives 1). Infinity once it overflows.
double exp_tower(int k) noexcept;

}  // namespace evt::numerics
