#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "evt/tails.hpp"

namespace evt {

/// Sample size n. Stored through log n so that n far beyond 2^63 (and
/// non-integer values such as n = e^16) can be used; the integer count is
/// kept when n was given as one.
class SampleSize {
 public:
  /// n >= 2.
  static SampleSize of(std::int64_t n);
  /// log n >= log 2.
  static SampleSize from_log(double log_n);

  double log() const noexcept { return log_n_; }
  double value() const noexcept;
  std::optional<std::int64_t> count() const noexcept { return count_; }

  bool operator==(const SampleSize& other) const noexcept { return log_n_ == other.log_n_; }
  auto operator<=>(const SampleSize& other) const noexcept { return log_n_ <=> other.log_n_; }

 private:
  SampleSize(double log_n, std::optional<std::int64_t> count) : log_n_(log_n), count_(count) {}
  double log_n_;
  std::optional<std::int64_t> count_;
};

enum class NormingMethod { ExactQuantile, ClosedForm, AsymptoticIteration };

/// Location convention: 1 - F(b) = 1/n, or F(b) = exp(-1/n).
enum class Centering { InverseN, ExpInverseN };

/// Scale convention: a = f(b)/g(b) (default) or the auxiliary function a = f(b).
enum class ScaleRule { AuxiliaryOverG, AuxiliaryFunction };

struct NormingOptions {
  Centering centering = Centering::InverseN;
  ScaleRule scale = ScaleRule::AuxiliaryOverG;
};

struct NormingPair {
  SampleSize n;
  double a;
  double b;
  NormingMethod method;
};

/// b = quantile of the tail at 1/n (or at 1 - exp(-1/n)); a from the von Mises
/// components at b. DomainError if 1/n exceeds tail(x0).
NormingPair norming_exact(const DistributionSpec& dist, SampleSize n, const NormingOptions& options = {});

/// Closed-form pair for 1 - F = ell(x) x^alpha exp(-c x^p). Needs log n > c.
NormingPair norming_weibull_closed(double c, double p, double alpha, const SlowlyVarying& ell, SampleSize n);

/// Closed-form pair for 1 - F = ell(x) x^alpha exp(-c log^p x), p > 1, to
/// first iteration order. Needs log n > c.
NormingPair norming_logweibull_closed(double c, double p, double alpha, const SlowlyVarying& ell, SampleSize n);

/// Dispatches to the closed form of the family (exp counts as Weibull with
/// c = p = 1). DomainError for families without one.
NormingPair norming_closed(const DistributionSpec& dist, SampleSize n);

/// Both readings of the pure Weibull location formula
/// b = u^(1/p) + (1/(pc)) log(1/c) u^(1/p-1), u = log n / c:
/// first as printed, second with log(1/c) applied to the whole product.
struct WeibullLocationReadings {
  double as_printed;
  double log_of_product;
};
WeibullLocationReadings weibull_example_location(double c, double p, SampleSize n);

using FixedPointCorrection = std::function<double(double y, double u)>;

/// y_0 = u, y_{j+1} = u + correction(y_j, u). Throws DivergenceError if the
/// step |y_{j+1} - y_j| grows twice in a row or an iterate is not finite.
double asymptotic_iterate(const FixedPointCorrection& correction, double u, int iterations = 3);

/// Pair from asymptotic iteration of the location equation of a Weibull-like
/// (in y = b^p) or log-Weibull-like (in y = log^p b) tail; a = f(b)/g(b).
NormingPair norming_iterated(const DistributionSpec& dist, SampleSize n, int iterations = 3);

struct TypesGap {
  double ratio_gap;
  double shift_gap;
};

/// (|a/a' - 1|, |b - b'| / a). MismatchError if the sample sizes differ.
TypesGap types_equivalence_gap(const NormingPair& pair, const NormingPair& other);

}  // namespace evt
