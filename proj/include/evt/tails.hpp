#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace evt {

/// Slowly varying factor ell(x) of a Weibull-like or log-Weibull-like tail.
///
/// Two closed forms are built in: a constant, and ell0 * (log x)^beta for
/// x > 1. Both are normalized in Karamata's sense, so the index function
/// delta(t) = t * d/dt log ell(t) is available exactly.
class SlowlyVarying {
 public:
  struct Constant {
    double level;
  };
  struct LogPower {
    double level;
    double exponent;
  };

  static SlowlyVarying constant(double level);
  static SlowlyVarying log_power(double level, double exponent);

  bool is_constant() const noexcept { return std::holds_alternative<Constant>(form_); }
  double level() const noexcept;
  /// beta for LogPower, 0 for Constant.
  double exponent() const noexcept;

  double log_value(double x) const;
  double operator()(double x) const;
  /// delta(t); beta / log t for LogPower, 0 for Constant.
  double index_function(double t) const;

  std::string to_string() const;

 private:
  explicit SlowlyVarying(std::variant<Constant, LogPower> form) : form_(form) {}
  std::variant<Constant, LogPower> form_;
};

/// 1 - F(x) = exp(-x), x >= 0.
struct ExponentialUnit {};

/// 1 - F(x) = ell(x) x^alpha exp(-c x^p), x >= x0.
struct WeibullLike {
  double c;
  double p;
  double alpha;
  SlowlyVarying ell;
  double x0;
};

/// 1 - F(x) = ell(x) x^alpha exp(-c log^p x), x >= x0 >= e.
struct LogWeibullLike {
  double c;
  double p;
  double alpha;
  SlowlyVarying ell;
  double x0;
};

/// 1 - F(x) = c(x) exp(-int_{x0}^x g(t)/f(t) dt) from caller-supplied
/// handles. The handles must be pure. The smoothness requirement
/// f^2(x) c''(x) -> 0 is the caller's obligation and is not checked.
/// An optional closed-form log tail replaces the quadrature when supplied.
struct GeneralizedVonMises {
  std::function<double(double)> f;
  std::function<double(double)> g;
  std::function<double(double)> c;
  double x0;
  std::function<double(double)> log_tail;
};

/// Von Mises tail with f(t) = C t (log_(k) t)^(-a), g = 1, c = 1.
struct IteratedLogScale {
  int k;
  double a;
  double C;
  double x0;
};

/// A tail family with validated parameters and a chosen left end x0 of
/// the tail representation. Below x0 the law is completed by an atom at x0.
class DistributionSpec {
 public:
  using Family = std::variant<ExponentialUnit, WeibullLike, LogWeibullLike, GeneralizedVonMises, IteratedLogScale>;

  static DistributionSpec exponential();
  /// When x0 is omitted the smallest admissible point of a dyadic grid is
  /// chosen (tail <= 1 and strictly decreasing from there on).
  static DistributionSpec weibull_like(double c, double p, double alpha, SlowlyVarying ell,
                                       std::optional<double> x0 = std::nullopt);
  static DistributionSpec log_weibull_like(double c, double p, double alpha, SlowlyVarying ell,
                                           std::optional<double> x0 = std::nullopt);
  static DistributionSpec generalized_von_mises(std::function<double(double)> f, std::function<double(double)> g,
                                                std::function<double(double)> c, double x0,
                                                std::string label = "vonmises",
                                                std::function<double(double)> log_tail = {});
  /// Default x0 is the k-fold exponential tower of 1, where log_(k) x0 = 1.
  static DistributionSpec iterated_log_scale(int k, double a, double C, std::optional<double> x0 = std::nullopt);

  const Family& family() const noexcept { return family_; }
  double x0() const noexcept;
  /// Canonical spec string (parseable by parse_distribution for built-ins).
  const std::string& label() const noexcept { return label_; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&family_);
  }

 private:
  DistributionSpec(Family family, std::string label) : family_(std::move(family)), label_(std::move(label)) {}
  Family family_;
  std::string label_;
};

struct VonMisesComponents {
  double f;
  double g;
  double c;
};

/// log(1 - F(x)) for x >= x0. DomainError below x0; QuadratureError for
/// handle-based families when the integral does not converge.
double log_tail(const DistributionSpec& dist, double x);

/// 1 - F(x) = exp(log_tail(x)).
double tail(const DistributionSpec& dist, double x);

/// log_tail(to) - log_tail(from), integrated only over [from, to] for
/// quadrature-backed families.
double log_tail_difference(const DistributionSpec& dist, double from, double to);

/// x with log_tail(x) = log_q, for log_q <= log_tail(x0).
double quantile_log_tail(const DistributionSpec& dist, double log_q);

/// x with 1 - F(x) = q, for 0 < q <= tail(x0).
double quantile_tail(const DistributionSpec& dist, double q);

/// (f, g, c) of the representation 1 - F = c exp(-int g/f) at t >= x0.
VonMisesComponents von_mises_components(const DistributionSpec& dist, double t);

/// Parses `exp`, `weibull:c=..,p=..,alpha=..,ell=const:<l>|logpow:<l>:<beta>`,
/// `logweibull:...` (same keys) and `iterlog:k=..,a=..,C=..`.
/// Throws ParseError naming the offending field.
DistributionSpec parse_distribution(std::string_view text);

}  // namespace evt
