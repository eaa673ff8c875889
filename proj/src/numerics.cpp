#include "evt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "evt/error.hpp"

namespace evt::numerics {

namespace {

struct SimpsonState {
  const ScalarFunction& f;
  const QuadratureOptions& options;
  std::int64_t evaluations = 0;

  double eval(double x) {
    if (++evaluations > options.max_evaluations) {
      throw QuadratureError("quadrature evaluation budget exhausted near x=" + std::to_string(x));
    }
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw QuadratureError("non-finite integrand at x=" + std::to_string(x));
    }
    return v;
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tolerance, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double refined = left + right;
    const double delta = refined - whole;
    if (std::abs(delta) <= 15.0 * tolerance) {
      return refined + delta / 15.0;
    }
    if (depth >= options.max_depth) {
      throw QuadratureError("adaptive Simpson depth cap reached on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tolerance, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tolerance, depth + 1);
  }
};

}  // namespace

double integrate(const ScalarFunction& f, double a, double b, const QuadratureOptions& options) {
  if (a == b) return 0.0;
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw QuadratureError("integration bounds must be finite");
  }
  if (b < a) return -integrate(f, b, a, options);

  SimpsonState state{f, options};
  const double fa = state.eval(a);
  const double fb = state.eval(b);
  const double m = 0.5 * (a + b);
  const double fm = state.eval(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);

  // A coarse five-point pass sizes the relative floor.
  const double q1 = state.eval(0.5 * (a + m));
  const double q3 = state.eval(0.5 * (m + b));
  const double coarse = (b - a) / 12.0 * (fa + 4.0 * q1 + 2.0 * fm + 4.0 * q3 + fb);
  const double scale = std::max(std::abs(coarse), std::abs(whole));
  const double tolerance = std::max(options.abs_tolerance, options.rel_tolerance * scale);

  const double left = (m - a) / 6.0 * (fa + 4.0 * q1 + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * q3 + fb);
  return state.recurse(a, m, fa, q1, fm, left, 0.5 * tolerance, 1) +
         state.recurse(m, b, fm, q3, fb, right, 0.5 * tolerance, 1);
}

double integrate_piecewise(const ScalarFunction& f, double a, double b, std::span<const double> breakpoints,
                           const QuadratureOptions& options) {
  if (b < a) return -integrate_piecewise(f, b, a, breakpoints, options);
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate(f, cuts[i], cuts[i + 1], options);
  }
  return total;
}

double find_root(const ScalarFunction& h, double lo, double hi, const RootOptions& options) {
  if (lo > hi) std::swap(lo, hi);
  const double hlo = h(lo);
  if (hlo == 0.0) return lo;
  const double hhi = h(hi);
  if (hhi == 0.0) return hi;
  if (std::signbit(hlo) == std::signbit(hhi) || std::isnan(hlo) || std::isnan(hhi)) {
    throw ConvergenceError("root not bracketed on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  auto width_ok = [](double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), std::numeric_limits<double>::min()});
    return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * scale;
  };
  std::uintmax_t max_iter = static_cast<std::uintmax_t>(options.max_iterations);
  std::pair<double, double> bracket;
  try {
    bracket = boost::math::tools::toms748_solve(h, lo, hi, hlo, hhi, width_ok, max_iter);
  } catch (const std::exception& e) {
    throw ConvergenceError(std::string("root polish failed: ") + e.what());
  }
  if (max_iter >= static_cast<std::uintmax_t>(options.max_iterations) && !width_ok(bracket.first, bracket.second)) {
    throw ConvergenceError("root finder exceeded " + std::to_string(options.max_iterations) + " iterations");
  }
  const double a = bracket.first;
  const double b = bracket.second;
  return std::abs(h(a)) <= std::abs(h(b)) ? a : b;
}

double log1m(double s) noexcept { return std::log1p(-s); }

double log1mexp(double x) noexcept {
  // Maechler's switch point -log 2.
  return x > -0.6931471805599453 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

double iterated_log(double t, int k) {
  double v = t;
  for (int i = 0; i < k; ++i) {
    if (!(v > 0.0)) {
      throw DomainError("iterated log of order " + std::to_string(k) + " undefined at t=" + std::to_string(t));
    }
    v = std::log(v);
  }
  return v;
}

double exp_tower(int k) noexcept {
  double v = 1.0;
  for (int i = 0; i < k; ++i) {
    v = std::exp(v);
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
  }
  return v;
}

}  // namespace evt::numerics
