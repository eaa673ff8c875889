#include <doctest.h>

#include <cmath>
#include <vector>

#include "evt/approx.hpp"
#include "evt/error.hpp"
#include "evt/gamma.hpp"

using namespace evt;

namespace {

const auto one = SlowlyVarying::constant(1.0);

// Closed-form sum of the series: n^2 (-log(1 - t) - t), t = e^{-gamma}/n.
double sigma_oracle(double gamma, double n) {
  const double t = std::exp(-gamma) / n;
  return n * n * (-std::log1p(-t) - t);
}

std::vector<DistributionSpec> identity_families() {
  std::vector<DistributionSpec> out{DistributionSpec::exponential()};
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    for (double alpha : {0.0, 2.0}) out.push_back(DistributionSpec::weibull_like(1, p, alpha, one));
  }
  out.push_back(DistributionSpec::log_weibull_like(1, 2, 0, one));
  out.push_back(DistributionSpec::log_weibull_like(1, 2, 1, one));
  out.push_back(DistributionSpec::iterated_log_scale(2, 1, 1));
  return out;
}

}  // namespace

TEST_CASE("gumbel cdf") {
  CHECK(std::abs(gumbel_cdf(0.0) - 0.36787944117) < 1e-11);
  CHECK(gumbel_cdf(800.0) == 1.0);
  CHECK(std::abs(gumbel_cdf(-std::log(std::log(2.0))) - 0.5) < 1e-15);
}

TEST_CASE("exact law of the scaled maximum") {
  const auto ex = DistributionSpec::exponential();
  const auto p10 = norming_exact(ex, SampleSize::of(10));
  double direct = 1.0;
  for (int i = 0; i < 10; ++i) direct *= 0.9;
  CHECK(std::abs(exact_max_cdf(ex, p10, 0.0) - direct) < 1e-15);
  CHECK(std::abs(exact_max_cdf(ex, p10, 0.0) - 0.3486784401) < 1e-10);
  const auto p2 = norming_exact(ex, SampleSize::of(2));
  CHECK(std::abs(exact_max_cdf(ex, p2, 0.0) - 0.25) < 1e-15);
  CHECK(exact_max_cdf(ex, p2, 1e3) == 1.0);
  // Below x0 the atom gives F(x0)^n = 0 for the exponential.
  CHECK(exact_max_cdf(ex, p2, -50.0) == 0.0);
  const auto lw = DistributionSpec::log_weibull_like(1, 2, 0, one);
  const auto lp = norming_exact(lw, SampleSize::of(3));
  CHECK(std::abs(exact_max_cdf(lw, lp, -1e6) - std::pow(1.0 - tail(lw, lw.x0()), 3)) < 1e-15);
}

TEST_CASE("accompanying law") {
  const auto ex = DistributionSpec::exponential();
  const auto pair = norming_exact(ex, SampleSize::of(1000));
  for (double x : {-2.0, 0.0, 3.0}) CHECK(std::abs(accompanying_law(ex, pair, x) - gumbel_cdf(x)) < 1e-14);
  const auto p10 = norming_exact(ex, SampleSize::of(10));
  // gamma = -log n exactly sits on the closed branch: exp(-n).
  CHECK(std::abs(accompanying_law(ex, p10, -p10.b) - std::exp(-10.0)) < 1e-18);
  CHECK_THROWS_AS(accompanying_law(ex, pair, -std::log(1000.0) - 0.1), DomainError);

  const auto w2 = DistributionSpec::weibull_like(1, 2, 0, one);
  const auto p16 = norming_exact(w2, SampleSize::from_log(16.0));
  CHECK(std::abs(accompanying_law(w2, p16, 1.0) - std::exp(-std::exp(-1.015625))) < 1e-13);
}

TEST_CASE("sigma series") {
  CHECK(sigma_series(800.0, SampleSize::of(10)) == 0.0);
  const double s = sigma_series(0.0, SampleSize::of(2));
  CHECK(std::abs(s - 4.0 * (std::log(2.0) - 0.5)) < 1e-15);
  CHECK(std::abs(s - 0.7725887) < 1e-7);
  for (double gamma : {-3.0, 0.0, 2.0}) {
    const double n = 100.0;
    const double value = sigma_series(gamma, SampleSize::of(100));
    CHECK(std::abs(value - sigma_oracle(gamma, n)) < 1e-13 * value);
    const double lead = std::exp(-2 * gamma) / 2;
    const double bound = std::exp(-3 * gamma) / (3 * n) / (1 - std::exp(-gamma) / n);
    CHECK(value - lead <= bound);
    CHECK(value - lead >= 0.0);
  }
  CHECK_THROWS_AS(sigma_series(-std::log(2.0), SampleSize::of(2)), DivergenceError);
}

TEST_CASE("two-term factorization") {
  const auto ex = DistributionSpec::exponential();
  const auto p2 = norming_exact(ex, SampleSize::of(2));
  CHECK(std::abs(two_term(ex, p2, 0.0) - 0.25) < 1e-15);
  const auto p3 = norming_exact(ex, SampleSize::of(1000));
  CHECK(std::abs(two_term(ex, p3, 8.0) - accompanying_law(ex, p3, 8.0)) <= std::exp(-16.0) / 1000.0);
}

TEST_CASE("master identity on guarded grids") {
  for (const auto& d : identity_families()) {
    CAPTURE(d.label());
    for (std::int64_t n : {10LL, 1000LL, 1'000'000LL}) {
      if (-std::log(static_cast<double>(n)) > log_tail(d, d.x0())) continue;
      const auto pair = norming_exact(d, SampleSize::of(n));
      const auto xs = guarded_grid(d, pair, -2.0, 6.0, 61);
      CHECK(!xs.empty());
      for (double x : xs) {
        const double exact = exact_max_cdf(d, pair, x);
        CHECK(std::abs(two_term(d, pair, x) - exact) <= 1e-10);
        for (double v : {exact, gumbel_cdf(x), accompanying_law(d, pair, x), two_term(d, pair, x)}) {
          CHECK(v >= 0.0);
          CHECK(v <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("monotone in x") {
  for (const auto& d : identity_families()) {
    const auto pair = norming_exact(d, SampleSize::of(1000));
    double e_prev = -1.0, b_prev = -1.0;
    for (double x : guarded_grid(d, pair, -2.0, 6.0, 81)) {
      const double e = exact_max_cdf(d, pair, x);
      const double b = accompanying_law(d, pair, x);
      CHECK(e >= e_prev);
      CHECK(b >= b_prev);
      e_prev = e;
      b_prev = b;
    }
  }
}

TEST_CASE("accompanying law approaches the Gumbel limit") {
  const auto d = DistributionSpec::weibull_like(1, 2, 0, one);
  for (double x : {-1.0, 1.0, 3.0}) {
    double previous = INFINITY;
    for (int k = 2; k <= 9; ++k) {
      const auto pair = norming_exact(d, SampleSize::of(static_cast<std::int64_t>(std::pow(10.0, k))));
      const double gap = std::abs(accompanying_law(d, pair, x) - gumbel_cdf(x));
      CHECK(gap < previous);
      previous = gap;
    }
  }
}

TEST_CASE("first-order correction") {
  CHECK(first_order_corrected(1.3, 1.3) == gumbel_cdf(1.3));
  CHECK(std::abs(first_order_corrected(0.0, 0.03125) - std::exp(-1.0) * 1.03125) < 1e-15);
  CHECK(std::abs(first_order_corrected(0.0, 0.03125) - 0.37937) < 1e-5);
  const auto ex = DistributionSpec::exponential();
  const auto pair = norming_exact(ex, SampleSize::of(50));
  for (double x : {-1.0, 2.0}) {
    CHECK(std::abs(evaluate(ex, pair, FirstOrderCorrected{}, x) - gumbel_cdf(x)) < 1e-14);
  }

  // |exact - corrected| = o(|exact - Lambda|): ratio small at n = 1e8.
  const auto w2 = DistributionSpec::weibull_like(1, 2, 0, one);
  const auto big = norming_exact(w2, SampleSize::of(100'000'000));
  for (double x : {0.5, 1.0, 2.0}) {
    const double exact = exact_max_cdf(w2, big, x);
    const double ratio = std::abs(exact - evaluate(w2, big, FirstOrderCorrected{}, x)) / std::abs(exact - gumbel_cdf(x));
    CHECK(ratio < 0.3);
  }
}

TEST_CASE("H function and the second-order approximant") {
  CHECK(h_function(1.0, 0.0) == 0.0);
  CHECK(h_function(1.0, -1.0) == 0.0);
  CHECK(h_function(std::exp(1.0), 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(h_function(2.0, -1.0) - (std::log(2.0) - 0.5)) < 1e-15);
  CHECK(std::abs(h_function(2.0, -1.0) - 0.193147) < 1e-6);
  CHECK(std::abs(h_function(3.0, -1e-7) - h_function(3.0, 0.0)) < 1e-6);
  CHECK_THROWS_AS(h_function(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(h_function(1.0, 0.5), DomainError);

  const auto d = DistributionSpec::weibull_like(1, 2, 0, one);
  const auto pair = norming_exact(d, SampleSize::of(1000));
  // H(1) = 0: the first factor is Lambda(1), the second the exact Sigma factor.
  const double at_one = second_order_approx(d, pair, 1.0, 0.0, 0.3);
  CHECK(std::abs(at_one - gumbel_cdf(1.0) * std::exp(-sigma_series(d, pair, 1.0) / 1000.0)) < 1e-12);
  CHECK_THROWS_AS(second_order_approx(d, pair, -0.5, 0.0, 0.3), DomainError);
  const auto preset = weibull_like_second_order(2.0);
  CHECK(preset.rho == 0.0);
  CHECK(std::abs(preset.rate(SampleSize::from_log(10.0)) - 0.05) < 1e-16);
  const double v = evaluate(d, pair, preset, 2.0);
  CHECK(v > 0.0);
  CHECK(v < 1.0);
}

TEST_CASE("grids and names") {
  const auto g = linear_grid(-2.0, 6.0, 9);
  CHECK(g.size() == 9);
  CHECK(g.front() == -2.0);
  CHECK(g[1] == -1.0);
  CHECK(g.back() == 6.0);
  CHECK_THROWS_AS(linear_grid(1.0, 0.0, 3), DomainError);
  CHECK(approximant_name(Accompanying{}) == "accompanying");
  const auto ex = DistributionSpec::exponential();
  const auto pair = norming_exact(ex, SampleSize::of(10));
  const auto xs = guarded_grid(ex, pair, -5.0, 6.0, 12);
  for (double x : xs) CHECK(x >= -std::log(10.0) + 0.5);
  const auto ep = eval_point(ex, pair, Gumbel{}, 1.0);
  CHECK(ep.signed_error == ep.exact - ep.approx);
}
