#include "evt/tails.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "evt/error.hpp"
#include "evt/format.hpp"
#include "evt/numerics.hpp"

namespace evt {

namespace {

constexpr double kE = 2.718281828459045;
// Auto-selected x0 lives on base * 2^(j / kGridPerOctave).
constexpr int kGridPerOctave = 16;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

double weibull_log_tail(const WeibullLike& w, double x) {
  double value = w.ell.log_value(x) - w.c * std::pow(x, w.p);
  if (w.alpha != 0.0) value += w.alpha * std::log(x);
  return value;
}

double log_weibull_log_tail(const LogWeibullLike& w, double x) {
  const double lx = std::log(x);
  return w.ell.log_value(x) + w.alpha * lx - w.c * std::pow(lx, w.p);
}

// g of the representation; only its sign matters for x0 selection.
double weibull_g(const WeibullLike& w, double t) {
  const double shift = w.alpha + w.ell.index_function(t);
  if (shift == 0.0) return 1.0;
  return 1.0 - shift / (w.c * w.p * std::pow(t, w.p));
}

double log_weibull_g(const LogWeibullLike& w, double t) {
  const double shift = w.alpha + w.ell.index_function(t);
  if (shift == 0.0) return 1.0;
  return 1.0 - shift / (w.c * w.p * std::pow(std::log(t), w.p - 1.0));
}

// Smallest grid point from which the tail is <= 1 and strictly decreasing.
// `eventually_safe(x)` must guarantee g > 0 on [x, inf).
template <class LogTail, class G, class Safe>
double select_x0(double base, int j_min, bool zero_allowed, LogTail&& log_tail_at, G&& g_at, Safe&& eventually_safe) {
  auto point = [base](int j) { return base * std::exp2(static_cast<double>(j) / kGridPerOctave); };
  auto admissible = [&](double x) { return log_tail_at(x) <= 0.0 && g_at(x) > 0.0; };

  int j = std::max(j_min, 0);
  while (!(eventually_safe(point(j)) && admissible(point(j)))) {
    j += kGridPerOctave;
    if (!std::isfinite(point(j)) || point(j) > 1e300) {
      throw DomainError("cannot find an admissible x0 for the tail parameters");
    }
  }
  while (j - 1 >= j_min && admissible(point(j - 1))) --j;
  if (j == j_min && zero_allowed) return 0.0;
  return point(j);
}

double gvm_log_tail_difference(const GeneralizedVonMises& v, double from, double to) {
  if (v.log_tail) return v.log_tail(to) - v.log_tail(from);
  const auto integrand = [&v](double t) { return v.g(t) / v.f(t); };
  const double integral = numerics::integrate(integrand, from, to);
  return std::log(v.c(to)) - std::log(v.c(from)) - integral;
}

double iterlog_log_tail_difference(const IteratedLogScale& s, double from, double to) {
  // int dt / f(t) with s = log t becomes int (log_(k-1) s)^a ds / C.
  const auto integrand = [&s](double u) { return std::pow(numerics::iterated_log(u, s.k - 1), s.a); };
  return -numerics::integrate(integrand, std::log(from), std::log(to)) / s.C;
}

void check_support(const DistributionSpec& dist, double x, const char* what) {
  if (!(x >= dist.x0())) {
    throw DomainError(std::string(what) + ": x=" + format_double(x) + " is below x0=" + format_double(dist.x0()) +
                      " of " + dist.label());
  }
}

std::string weibull_label(const char* kind, double c, double p, double alpha, const SlowlyVarying& ell) {
  return std::string(kind) + ":c=" + format_double(c) + ",p=" + format_double(p) + ",alpha=" + format_double(alpha) +
         ",ell=" + ell.to_string();
}

}  // namespace

// --- SlowlyVarying -------------------------------------------------------

SlowlyVarying SlowlyVarying::constant(double level) {
  require(level > 0.0 && std::isfinite(level), "slowly varying level must be positive");
  return SlowlyVarying(Constant{level});
}

SlowlyVarying SlowlyVarying::log_power(double level, double exponent) {
  require(level > 0.0 && std::isfinite(level), "slowly varying level must be positive");
  require(std::isfinite(exponent), "log-power exponent must be finite");
  return SlowlyVarying(LogPower{level, exponent});
}

double SlowlyVarying::level() const noexcept {
  return std::visit([](const auto& form) { return form.level; }, form_);
}

double SlowlyVarying::exponent() const noexcept {
  if (const auto* lp = std::get_if<LogPower>(&form_)) return lp->exponent;
  return 0.0;
}

double SlowlyVarying::log_value(double x) const {
  return std::visit(Overloaded{
                        [](const Constant& k) { return std::log(k.level); },
                        [x](const LogPower& lp) {
                          if (!(x > 1.0)) throw DomainError("log-power slowly varying function needs x > 1");
                          if (lp.exponent == 0.0) return std::log(lp.level);
                          return std::log(lp.level) + lp.exponent * std::log(std::log(x));
                        },
                    },
                    form_);
}

double SlowlyVarying::operator()(double x) const { return std::exp(log_value(x)); }

double SlowlyVarying::index_function(double t) const {
  if (const auto* lp = std::get_if<LogPower>(&form_)) {
    if (!(t > 1.0)) throw DomainError("log-power index function needs t > 1");
    return lp->exponent / std::log(t);
  }
  return 0.0;
}

std::string SlowlyVarying::to_string() const {
  return std::visit(Overloaded{
                        [](const Constant& k) { return "const:" + format_double(k.level); },
                        [](const LogPower& lp) {
                          return "logpow:" + format_double(lp.level) + ":" + format_double(lp.exponent);
                        },
                    },
                    form_);
}

// --- DistributionSpec ----------------------------------------------------

DistributionSpec DistributionSpec::exponential() { return DistributionSpec(ExponentialUnit{}, "exp"); }

DistributionSpec DistributionSpec::weibull_like(double c, double p, double alpha, SlowlyVarying ell,
                                                std::optional<double> x0) {
  require(c > 0.0 && std::isfinite(c), "weibull: c must be positive");
  require(p > 0.0 && std::isfinite(p), "weibull: p must be positive");
  require(std::isfinite(alpha), "weibull: alpha must be finite");
  WeibullLike w{c, p, alpha, ell, 0.0};
  auto label = weibull_label("weibull", c, p, alpha, ell);

  const auto lt = [&w](double x) { return weibull_log_tail(w, x); };
  const auto g = [&w](double x) { return weibull_g(w, x); };
  if (x0) {
    require(*x0 >= 0.0, "weibull: x0 must be nonnegative");
    require(ell.is_constant() || *x0 > 1.0, "weibull: log-power ell needs x0 > 1");
    require(*x0 > 0.0 || (alpha == 0.0 && ell.is_constant()), "weibull: x0 = 0 needs alpha = 0 and constant ell");
    require(lt(*x0) <= 0.0, "weibull: tail(x0) exceeds 1");
    require(*x0 == 0.0 || g(*x0) > 0.0, "weibull: tail is not decreasing at x0");
    w.x0 = *x0;
  } else {
    const double bound = std::abs(alpha) + std::abs(ell.exponent()) + 1.0;
    const auto safe = [&](double x) { return x >= kE && c * p * std::pow(x, p) > bound; };
    const bool zero_ok = alpha == 0.0 && ell.is_constant() && ell.level() <= 1.0;
    const int j_min = ell.is_constant() ? -8 * kGridPerOctave : 1;
    w.x0 = select_x0(1.0, j_min, zero_ok, lt, g, safe);
  }
  return DistributionSpec(w, std::move(label));
}

DistributionSpec DistributionSpec::log_weibull_like(double c, double p, double alpha, SlowlyVarying ell,
                                                    std::optional<double> x0) {
  require(c > 0.0 && std::isfinite(c), "logweibull: c must be positive");
  require(p > 1.0 && std::isfinite(p), "logweibull: p must exceed 1 (p <= 1 is outside the Gumbel domain)");
  require(std::isfinite(alpha), "logweibull: alpha must be finite");
  LogWeibullLike w{c, p, alpha, ell, kE};
  auto label = weibull_label("logweibull", c, p, alpha, ell);

  const auto lt = [&w](double x) { return log_weibull_log_tail(w, x); };
  const auto g = [&w](double x) { return log_weibull_g(w, x); };
  if (x0) {
    require(*x0 >= kE, "logweibull: x0 must be at least e");
    require(lt(*x0) <= 0.0, "logweibull: tail(x0) exceeds 1");
    require(g(*x0) > 0.0, "logweibull: tail is not decreasing at x0");
    w.x0 = *x0;
  } else {
    const double bound = std::abs(alpha) + std::abs(ell.exponent()) + 1.0;
    const auto safe = [&](double x) { return c * p * std::pow(std::log(x), p - 1.0) > bound; };
    w.x0 = select_x0(kE, 0, false, lt, g, safe);
  }
  return DistributionSpec(w, std::move(label));
}

DistributionSpec DistributionSpec::generalized_von_mises(std::function<double(double)> f,
                                                         std::function<double(double)> g,
                                                         std::function<double(double)> c, double x0,
                                                         std::string label,
                                                         std::function<double(double)> log_tail) {
  require(f && g && c, "vonmises: f, g and c handles are required");
  require(std::isfinite(x0), "vonmises: x0 must be finite");
  require(c(x0) > 0.0 && c(x0) <= 1.0, "vonmises: c(x0) must lie in (0, 1]");
  require(f(x0) > 0.0, "vonmises: f must be positive at x0");
  return DistributionSpec(GeneralizedVonMises{std::move(f), std::move(g), std::move(c), x0, std::move(log_tail)},
                          std::move(label));
}

DistributionSpec DistributionSpec::iterated_log_scale(int k, double a, double C, std::optional<double> x0) {
  require(k >= 2, "iterlog: k must be at least 2");
  require(a > 0.0 && std::isfinite(a), "iterlog: a must be positive");
  require(C > 0.0 && std::isfinite(C), "iterlog: C must be positive");
  const double floor = numerics::exp_tower(k - 1);
  double start = x0.value_or(numerics::exp_tower(k));
  require(std::isfinite(start), "iterlog: k-fold exponential tower overflows binary64");
  require(start > floor, "iterlog: x0 must exceed the (k-1)-fold exponential tower so that log_(k) x0 > 0");
  std::string label = "iterlog:k=" + std::to_string(k) + ",a=" + format_double(a) + ",C=" + format_double(C);
  return DistributionSpec(IteratedLogScale{k, a, C, start}, std::move(label));
}

double DistributionSpec::x0() const noexcept {
  return std::visit(Overloaded{
                        [](const ExponentialUnit&) { return 0.0; },
                        [](const auto& fam) { return fam.x0; },
                    },
                    family_);
}

// --- evaluation ----------------------------------------------------------

double log_tail(const DistributionSpec& dist, double x) {
  check_support(dist, x, "log_tail");
  return std::visit(Overloaded{
                        [x](const ExponentialUnit&) { return -x; },
                        [x](const WeibullLike& w) { return weibull_log_tail(w, x); },
                        [x](const LogWeibullLike& w) { return log_weibull_log_tail(w, x); },
                        [x](const GeneralizedVonMises& v) {
                          if (v.log_tail) return v.log_tail(x);
                          return std::log(v.c(v.x0)) + gvm_log_tail_difference(v, v.x0, x);
                        },
                        [x](const IteratedLogScale& s) { return iterlog_log_tail_difference(s, s.x0, x); },
                    },
                    dist.family());
}

double tail(const DistributionSpec& dist, double x) { return std::exp(log_tail(dist, x)); }

double log_tail_difference(const DistributionSpec& dist, double from, double to) {
  check_support(dist, from, "log_tail_difference");
  check_support(dist, to, "log_tail_difference");
  if (from == to) return 0.0;
  return std::visit(Overloaded{
                        [&](const GeneralizedVonMises& v) { return gvm_log_tail_difference(v, from, to); },
                        [&](const IteratedLogScale& s) { return iterlog_log_tail_difference(s, from, to); },
                        [&](const auto&) { return log_tail(dist, to) - log_tail(dist, from); },
                    },
                    dist.family());
}

double quantile_log_tail(const DistributionSpec& dist, double log_q) {
  const double x0 = dist.x0();
  const double top = log_tail(dist, x0);
  if (!(log_q <= top) || !std::isfinite(log_q)) {
    throw DomainError("quantile_tail: log q=" + format_double(log_q) + " outside (-inf, log tail(x0)=" +
                      format_double(top) + "]");
  }
  if (log_q == top) return x0;

  const auto h = [&](double x) { return log_tail(dist, x) - log_q; };
  double lo = x0;
  double step = std::max(1.0, std::abs(x0));
  double hi = x0 + step;
  while (h(hi) > 0.0) {
    lo = hi;
    step *= 2.0;
    hi = x0 + step;
    if (!(hi < 1e300)) throw ConvergenceError("quantile_tail: no upper bracket for log q=" + format_double(log_q));
  }
  return numerics::find_root(h, lo, hi);
}

double quantile_tail(const DistributionSpec& dist, double q) {
  if (!(q > 0.0)) throw DomainError("quantile_tail: q must be positive, got " + format_double(q));
  return quantile_log_tail(dist, std::log(q));
}

VonMisesComponents von_mises_components(const DistributionSpec& dist, double t) {
  check_support(dist, t, "von_mises_components");
  return std::visit(Overloaded{
                        [](const ExponentialUnit&) { return VonMisesComponents{1.0, 1.0, 1.0}; },
                        [t](const WeibullLike& w) {
                          const double f = std::pow(t, 1.0 - w.p) / (w.c * w.p);
                          return VonMisesComponents{f, weibull_g(w, t), std::exp(weibull_log_tail(w, w.x0))};
                        },
                        [t](const LogWeibullLike& w) {
                          const double f = t * std::pow(std::log(t), 1.0 - w.p) / (w.c * w.p);
                          return VonMisesComponents{f, log_weibull_g(w, t), std::exp(log_weibull_log_tail(w, w.x0))};
                        },
                        [t](const GeneralizedVonMises& v) { return VonMisesComponents{v.f(t), v.g(t), v.c(t)}; },
                        [t](const IteratedLogScale& s) {
                          const double f = s.C * t * std::pow(numerics::iterated_log(t, s.k), -s.a);
                          return VonMisesComponents{f, 1.0, 1.0};
                        },
                    },
                    dist.family());
}

// --- parsing -------------------------------------------------------------

namespace {

std::map<std::string, std::string, std::less<>> parse_fields(std::string_view kind, std::string_view body,
                                                             std::initializer_list<std::string_view> keys) {
  std::map<std::string, std::string, std::less<>> fields;
  if (body.empty()) throw ParseError(std::string(kind) + ": missing parameters");
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = body.find(',', pos);
    const std::string_view item = body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError(std::string(kind) + ": expected key=value, got '" + std::string(item) + "'");
    }
    const std::string key(item.substr(0, eq));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ParseError(std::string(kind) + ": unknown key '" + key + "'");
    }
    if (!fields.emplace(key, std::string(item.substr(eq + 1))).second) {
      throw ParseError(std::string(kind) + ": duplicate key '" + key + "'");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  for (std::string_view key : keys) {
    if (!fields.contains(key)) throw ParseError(std::string(kind) + ": missing key '" + std::string(key) + "'");
  }
  return fields;
}

double field_number(std::string_view kind, const std::string& key, const std::string& value) {
  const auto parsed = parse_double(value);
  if (!parsed || !std::isfinite(*parsed)) {
    throw ParseError(std::string(kind) + ": field '" + key + "' is not a finite number: '" + value + "'");
  }
  return *parsed;
}

void field_check(bool ok, std::string_view kind, const std::string& key, const std::string& requirement) {
  if (!ok) throw ParseError(std::string(kind) + ": field '" + key + "' " + requirement);
}

SlowlyVarying parse_ell(std::string_view kind, const std::string& value) {
  const std::string_view v = value;
  if (v.starts_with("const:")) {
    const double level = field_number(kind, "ell", std::string(v.substr(6)));
    field_check(level > 0.0, kind, "ell", "level must be positive");
    return SlowlyVarying::constant(level);
  }
  if (v.starts_with("logpow:")) {
    const std::string_view rest = v.substr(7);
    const std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) throw ParseError(std::string(kind) + ": field 'ell' expects logpow:<l>:<beta>");
    const double level = field_number(kind, "ell", std::string(rest.substr(0, colon)));
    const double beta = field_number(kind, "ell", std::string(rest.substr(colon + 1)));
    field_check(level > 0.0, kind, "ell", "level must be positive");
    return SlowlyVarying::log_power(level, beta);
  }
  throw ParseError(std::string(kind) + ": field 'ell' must be const:<l> or logpow:<l>:<beta>, got '" + value + "'");
}

}  // namespace

DistributionSpec parse_distribution(std::string_view text) {
  if (text == "exp") return DistributionSpec::exponential();
  const std::size_t colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  if (kind == "weibull" || kind == "logweibull") {
    auto fields = parse_fields(kind, body, {"c", "p", "alpha", "ell"});
    const double c = field_number(kind, "c", fields["c"]);
    const double p = field_number(kind, "p", fields["p"]);
    const double alpha = field_number(kind, "alpha", fields["alpha"]);
    field_check(c > 0.0, kind, "c", "must be positive");
    if (kind == "weibull") {
      field_check(p > 0.0, kind, "p", "must be positive");
    } else {
      field_check(p > 1.0, kind, "p", "must exceed 1");
    }
    const SlowlyVarying ell = parse_ell(kind, fields["ell"]);
    try {
      return kind == "weibull" ? DistributionSpec::weibull_like(c, p, alpha, ell)
                               : DistributionSpec::log_weibull_like(c, p, alpha, ell);
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  if (kind == "iterlog") {
    auto fields = parse_fields(kind, body, {"k", "a", "C"});
    const auto k = parse_integer(fields["k"]);
    field_check(k.has_value(), kind, "k", "must be an integer");
    field_check(*k >= 2 && *k <= 3, kind, "k", "must be 2 or 3 (higher towers overflow binary64)");
    const double a = field_number(kind, "a", fields["a"]);
    const double C = field_number(kind, "C", fields["C"]);
    field_check(a > 0.0, kind, "a", "must be positive");
    field_check(C > 0.0, kind, "C", "must be positive");
    return DistributionSpec::iterated_log_scale(static_cast<int>(*k), a, C);
  }
  throw ParseError("unknown distribution kind '" + std::string(kind) + "' (expected exp, weibull, logweibull, iterlog)");
}

}  // namespace evt
