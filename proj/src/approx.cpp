#include "evt/approx.hpp"

#include <cmath>
#include <string>

#include "evt/error.hpp"
#include "evt/format.hpp"
#include "evt/gamma.hpp"
#include "evt/numerics.hpp"

namespace evt {

namespace {

constexpr int kSigmaTermCap = 200;
constexpr double kSigmaRelativeStop = 1e-16;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double exact_max_cdf(const DistributionSpec& dist, const NormingPair& pair, double x) {
  const double t = pair.b + pair.a * x;
  const double at = t >= dist.x0() ? t : dist.x0();
  const double log_s = log_tail(dist, at);
  if (log_s >= 0.0) return 0.0;
  return std::exp(pair.n.value() * numerics::log1m(std::exp(log_s)));
}

double accompanying_law(const DistributionSpec& dist, const NormingPair& pair, double x) {
  const double gamma = gamma_exact(dist, pair, x).value;
  if (gamma < -pair.n.log()) return 0.0;
  return gumbel_cdf(gamma);
}

double sigma_series(double gamma, SampleSize n) {
  if (!(gamma > -n.log())) {
    throw DivergenceError("sigma_series: needs gamma > -log n, got gamma=" + format_double(gamma) +
                          " with log n=" + format_double(n.log()));
  }
  const double ratio = std::exp(-gamma - n.log());
  double power = 1.0;
  double sum = 0.0;
  for (int k = 0; k < kSigmaTermCap; ++k) {
    const double term = power / (k + 2);
    sum += term;
    power *= ratio;
    if (power / (k + 3) < kSigmaRelativeStop * sum) return std::exp(-2.0 * gamma) * sum;
  }
  throw DivergenceError("sigma_series: no convergence in " + std::to_string(kSigmaTermCap) + " terms at gamma=" +
                        format_double(gamma));
}

double sigma_series(const DistributionSpec& dist, const NormingPair& pair, double x) {
  return sigma_series(gamma_exact(dist, pair, x).value, pair.n);
}

double two_term(const DistributionSpec& dist, const NormingPair& pair, double x) {
  const double gamma = gamma_exact(dist, pair, x).value;
  const double sigma = sigma_series(gamma, pair.n);
  return std::exp(-std::exp(-gamma) - sigma * std::exp(-pair.n.log()));
}

double first_order_corrected(double x, double gamma) {
  const double lambda = gumbel_cdf(x);
  return lambda + lambda * std::exp(-x) * (gamma - x);
}

double h_function(double x, double rho) {
  if (!(x > 0.0)) throw DomainError("h_function: x must be positive, got " + format_double(x));
  if (rho > 0.0) throw DomainError("h_function: rho must be nonpositive, got " + format_double(rho));
  const double lx = std::log(x);
  if (rho == 0.0) return 0.5 * lx * lx;
  return (std::expm1(rho * lx) / rho - lx) / rho;
}

double second_order_approx(const DistributionSpec& dist, const NormingPair& pair, double x, double rho,
                           double a_value) {
  const double h = h_function(x, rho);
  const double t = pair.b + pair.a * x;
  if (!(t >= dist.x0())) throw DomainError("second_order_approx: b + a x is below x0 at x=" + format_double(x));
  const double gamma = -(pair.n.log() + log_tail(dist, t));
  const double sigma = sigma_series(gamma, pair.n);
  return std::exp(-std::exp(-x) - a_value * h) * std::exp(-sigma * std::exp(-pair.n.log()));
}

SecondOrder weibull_like_second_order(double p) {
  if (!(p > 0.0)) throw DomainError("weibull_like_second_order: p must be positive");
  return SecondOrder{0.0, [p](SampleSize n) { return 1.0 / (p * n.log()); }};
}

std::string approximant_name(const ApproximantKind& kind) {
  return std::visit(Overloaded{
                        [](const Gumbel&) { return "gumbel"; },
                        [](const Accompanying&) { return "accompanying"; },
                        [](const TwoTerm&) { return "two_term"; },
                        [](const FirstOrderCorrected&) { return "first_order"; },
                        [](const SecondOrder&) { return "second_order"; },
                    },
                    kind);
}

double evaluate(const DistributionSpec& dist, const NormingPair& pair, const ApproximantKind& kind, double x) {
  return std::visit(Overloaded{
                        [&](const Gumbel&) { return gumbel_cdf(x); },
                        [&](const Accompanying&) { return accompanying_law(dist, pair, x); },
                        [&](const TwoTerm&) { return two_term(dist, pair, x); },
                        [&](const FirstOrderCorrected&) {
                          return first_order_corrected(x, gamma_exact(dist, pair, x).value);
                        },
                        [&](const SecondOrder& s) {
                          if (!s.rate) throw DomainError("second_order: A(n) handle is missing");
                          return second_order_approx(dist, pair, x, s.rho, s.rate(pair.n));
                        },
                    },
                    kind);
}

EvalPoint eval_point(const DistributionSpec& dist, const NormingPair& pair, const ApproximantKind& kind, double x) {
  const double exact = exact_max_cdf(dist, pair, x);
  const double approx = evaluate(dist, pair, kind, x);
  return EvalPoint{x, exact, approx, exact - approx};
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 2) throw DomainError("grid needs at least 2 steps");
  if (!(lo < hi)) throw DomainError("grid needs lo < hi");
  std::vector<double> xs(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) xs[i] = i + 1 == steps ? hi : lo + (hi - lo) * i / (steps - 1);
  return xs;
}

std::vector<double> guarded_grid(const DistributionSpec& dist, const NormingPair& pair, double lo, double hi,
                                 int steps, double margin) {
  std::vector<double> kept;
  for (double x : linear_grid(lo, hi, steps)) {
    if (!(pair.b + pair.a * x >= dist.x0())) continue;
    if (gamma_exact(dist, pair, x).value >= -pair.n.log() + margin) kept.push_back(x);
  }
  return kept;
}

}  // namespace evt
