#include <doctest.h>

#include <cmath>
#include <vector>

#include "evt/approx.hpp"
#include "evt/error.hpp"
#include "evt/gamma.hpp"

using namespace evt;

namespace {

const auto one = SlowlyVarying::constant(1.0);

std::vector<DistributionSpec> families() {
  return {
      DistributionSpec::exponential(),
      DistributionSpec::weibull_like(1, 0.5, 0, one),
      DistributionSpec::weibull_like(1, 2, 0, one),
      DistributionSpec::weibull_like(1, 3, 2, one),
      DistributionSpec::weibull_like(0.5, 1, -1, SlowlyVarying::log_power(1, 1)),
      DistributionSpec::log_weibull_like(1, 2, 0, one),
      DistributionSpec::log_weibull_like(1, 2, 1, one),
      DistributionSpec::iterated_log_scale(2, 1, 1),
  };
}

}  // namespace

TEST_CASE("gamma examples") {
  const auto ex = DistributionSpec::exponential();
  for (std::int64_t n : {10LL, 1000LL, 1'000'000'000LL}) {
    const auto pair = norming_exact(ex, SampleSize::of(n));
    CHECK(gamma_exact(ex, pair, 2.5).value == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(gamma_quadrature(ex, pair, -1.0).value == -1.0);
  }
  for (const auto& d : families()) {
    const auto pair = norming_exact(d, SampleSize::of(1000));
    CHECK(gamma_exact(d, pair, 0.0).value == 0.0);
    CHECK(gamma_quadrature(d, pair, 0.0).value == 0.0);
  }

  const auto w2 = DistributionSpec::weibull_like(1, 2, 0, one);
  const auto pair = norming_exact(w2, SampleSize::from_log(16.0));
  // c b^2 ((1 + x/(2 log n))^2 - 1) with b^2 = 16
  const double oracle = 16.0 * (std::pow(1.0 + 1.0 / 32.0, 2) - 1.0);
  CHECK(std::abs(gamma_exact(w2, pair, 1.0).value - oracle) < 1e-12);
  CHECK(std::abs(gamma_exact(w2, pair, 1.0).value - 1.015625) < 1e-12);
  CHECK(std::abs(gamma_quadrature(w2, pair, 1.0).value - 1.015625) < 1e-9);
  CHECK(gamma_exact(w2, pair, 1.0).route == GammaRoute::ExactTailRatio);
  CHECK(gamma_quadrature(w2, pair, 1.0).route == GammaRoute::Quadrature);

  const auto it = DistributionSpec::iterated_log_scale(2, 1, 1);
  const auto ip = norming_exact(it, SampleSize::of(1'000'000));
  CHECK(std::abs(gamma_exact(it, ip, 1.0).value - gamma_quadrature(it, ip, 1.0).value) < 1e-8);

  const auto lw = DistributionSpec::log_weibull_like(1, 2, 0, one);
  const auto lp = norming_exact(lw, SampleSize::of(1000));
  CHECK_THROWS_AS(gamma_exact(lw, lp, -1e6), DomainError);
}

TEST_CASE("route agreement on the grid") {
  for (const auto& d : families()) {
    CAPTURE(d.label());
    for (std::int64_t n : {1000LL, 1'000'000LL}) {
      const auto pair = norming_exact(d, SampleSize::of(n));
      double worst = 0.0;
      for (double x : linear_grid(-2.0, 6.0, 41)) {
        if (pair.b + pair.a * x < d.x0()) continue;
        worst = std::max(worst, std::abs(gamma_exact(d, pair, x).value - gamma_quadrature(d, pair, x).value));
      }
      CHECK(worst <= 1e-8);
    }
  }
}

TEST_CASE("quadrature route follows a non-default scale") {
  const auto d = DistributionSpec::weibull_like(1, 2, 3, one);
  const auto pair = norming_exact(d, SampleSize::of(100000), {Centering::InverseN, ScaleRule::AuxiliaryFunction});
  for (double x : {-1.0, 0.5, 2.0}) {
    CHECK(std::abs(gamma_exact(d, pair, x).value - gamma_quadrature(d, pair, x).value) < 1e-9);
  }
}

TEST_CASE("gamma is increasing in x") {
  for (const auto& d : families()) {
    CAPTURE(d.label());
    const auto pair = norming_exact(d, SampleSize::of(100000));
    double previous = -INFINITY;
    for (double x : linear_grid(-2.0, 6.0, 33)) {
      if (pair.b + pair.a * x < d.x0()) continue;
      const double g = gamma_exact(d, pair, x).value;
      CHECK(g > previous);
      previous = g;
    }
  }
}

TEST_CASE("gamma_n(x) -> x along n") {
  for (const auto& d : families()) {
    CAPTURE(d.label());
    for (double x : {-1.0, 0.5, 3.0}) {
      CAPTURE(x);
      double previous = INFINITY;
      for (int k = 3; k <= 9; ++k) {
        const auto pair = norming_exact(d, SampleSize::of(static_cast<std::int64_t>(std::pow(10.0, k))));
        if (pair.b + pair.a * x < d.x0()) continue;
        const double gap = std::abs(gamma_exact(d, pair, x).value - x);
        CHECK(gap <= previous);
        previous = gap;
      }
    }
  }
}

TEST_CASE("closed-form Weibull exponent") {
  CHECK(gamma_closed_weibull(1, SampleSize::of(1000), 7.0).value == 7.0);
  CHECK(std::abs(gamma_closed_weibull(2, SampleSize::from_log(1.0), 2.0).value - 3.0) < 1e-15);
  const auto n = SampleSize::from_log(1000.0);
  for (double x : {-1.0, 0.5, 2.0}) {
    const double value = gamma_closed_weibull(2, n, x).value;
    CHECK(std::abs((value - x) / (x * x / (4 * n.log())) - 1.0) < 1e-9);
  }
  CHECK_THROWS_AS(gamma_closed_weibull(2, SampleSize::from_log(1.0), -2.0), DomainError);

  for (double p : {0.5, 2.0, 3.0}) {
    const auto d = DistributionSpec::weibull_like(1, p, 0, one);
    for (double ln : {5.0, 20.0}) {
      const auto m = SampleSize::from_log(ln);
      const auto pair = norming_exact(d, m, {Centering::InverseN, ScaleRule::AuxiliaryFunction});
      for (double x : {-1.0, 1.0, 4.0}) {
        CHECK(std::abs(gamma_exact(d, pair, x).value - gamma_closed_weibull(p, m, x).value) <= 1e-10);
      }
    }
  }
}

TEST_CASE("correction predictors") {
  const auto pair16 = NormingPair{SampleSize::from_log(16.0), 0.125, 4.0, NormingMethod::ClosedForm};
  CHECK(correction_generalized_weibull(1.0, 1.0, {}, pair16, 1.7) == 0.0);
  CHECK(std::abs(correction_generalized_weibull(0.5, 2.0, {}, pair16, 1.0) - 0.015625) < 1e-15);
  CHECK(correction_weibull_like(1, 0, SampleSize::of(1000), 2.0) == 0.0);
  const auto n = SampleSize::of(1'000'000);
  CHECK(std::abs(correction_weibull_like(2, 0, n, 1.5) - 2.25 / (4 * n.log())) < 1e-15);
  CHECK(std::abs(correction_weibull_like(2, 3, SampleSize::from_log(10.0), 1.0) + 0.125) < 1e-15);
  CHECK_THROWS_AS(correction_weibull_like(2, 0, SampleSize::of(2), 0.1), DomainError);
  CHECK_THROWS_AS(correction_weibull_like(2, 0, SampleSize::from_log(4.0), 4.5), DomainError);

  const auto big = NormingPair{SampleSize::from_log(1e4), 1.0, 1e30, NormingMethod::ClosedForm};
  CHECK(correction_logweibull(0.5, 2, {}, big, 0.0) == 0.0);
  CHECK(std::abs(correction_logweibull(0.5, 2, {}, big, 1.0) - 0.0025) < 1e-15);
  CHECK_THROWS_AS(correction_logweibull(0.5, 1, {}, big, 1.0), DomainError);

  // The alpha term integrates alpha(t) = -alpha/(c p t^p) along b + C b^(1-p) v.
  const auto d = DistributionSpec::weibull_like(1, 2, 2, one);
  const auto pair = norming_exact(d, n, {Centering::InverseN, ScaleRule::AuxiliaryFunction});
  const double b = pair.b;
  const double step = 0.5 / b;
  const double oracle = 1.0 / (4 * n.log()) + (1.0 / (step * (b + step)) - 1.0 / (step * b));
  CHECK(std::abs(correction_generalized_weibull(0.5, 2, alpha_function(d), pair, 1.0) - oracle) < 1e-12);
}
