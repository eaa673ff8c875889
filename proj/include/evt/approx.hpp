#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "evt/norming.hpp"
#include "evt/tails.hpp"

namespace evt {

/// Lambda(x) = exp(-exp(-x)).
double gumbel_cdf(double x);

/// F^n(a x + b) = exp(n log(1 - tail(b + a x))). Below x0 the atom gives F(x0)^n.
double exact_max_cdf(const DistributionSpec& dist, const NormingPair& pair, double x);

/// B_n(x) = exp(-exp(-gamma_n(x))) for gamma_n(x) >= -log n, else 0.
double accompanying_law(const DistributionSpec& dist, const NormingPair& pair, double x);

/// Sigma = sum_{k>=0} exp(-(k+2) gamma) / ((k+2) n^k) from gamma directly.
/// DivergenceError unless gamma > -log n.
double sigma_series(double gamma, SampleSize n);
double sigma_series(const DistributionSpec& dist, const NormingPair& pair, double x);

/// exp(-exp(-gamma)) exp(-Sigma/n); equal to exact_max_cdf.
double two_term(const DistributionSpec& dist, const NormingPair& pair, double x);

/// Lambda(x) (1 + exp(-x)(gamma - x)). Not clamped to [0, 1].
double first_order_corrected(double x, double gamma);

/// H(x) = ((x^rho - 1)/rho - log x)/rho for rho < 0, log^2(x)/2 for rho = 0.
double h_function(double x, double rho);

/// exp(-exp(-x) - A H(x)) exp(-Sigma/n). DomainError for x <= 0 or rho > 0.
double second_order_approx(const DistributionSpec& dist, const NormingPair& pair, double x, double rho,
                           double a_value);

struct Gumbel {};
struct Accompanying {};
struct TwoTerm {};
struct FirstOrderCorrected {};
struct SecondOrder {
  double rho;
  std::function<double(SampleSize)> rate;
};
using ApproximantKind = std::variant<Gumbel, Accompanying, TwoTerm, FirstOrderCorrected, SecondOrder>;

/// rho = 0, A(n) = 1/(p log n).
SecondOrder weibull_like_second_order(double p);

std::string approximant_name(const ApproximantKind& kind);

/// Value of the approximant at x for the given pair.
double evaluate(const DistributionSpec& dist, const NormingPair& pair, const ApproximantKind& kind, double x);

struct EvalPoint {
  double x;
  double exact;
  double approx;
  double signed_error;
};

EvalPoint eval_point(const DistributionSpec& dist, const NormingPair& pair, const ApproximantKind& kind, double x);

/// `steps` equally spaced points on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int steps);

/// Points of the grid with b + a x >= x0 and gamma_n(x) >= -log n + margin.
std::vector<double> guarded_grid(const DistributionSpec& dist, const NormingPair& pair, double lo, double hi,
                                 int steps, double margin = 0.5);

}  // namespace evt
