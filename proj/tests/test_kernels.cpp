#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "evt/kernels.hpp"

using namespace evt::kernels;

TEST_CASE("parallel map matches the serial reference") {
  const auto fn = [](std::size_t i) { return std::sin(static_cast<double>(i)) * std::exp(-1e-4 * i); };
  const auto serial = map_indexed(10007, fn, Execution::Serial);
  const auto parallel = map_indexed(10007, fn, Execution::Parallel);
  REQUIRE(serial.size() == 10007);
  CHECK(serial == parallel);
  CHECK(max_indexed(10007, fn, Execution::Parallel) == max_indexed(10007, fn, Execution::Serial));
  CHECK(map_indexed(0, fn, Execution::Parallel).empty());
  CHECK(available_threads() >= 1);
}

TEST_CASE("the first failing index is rethrown") {
  const auto fn = [](std::size_t i) -> double {
    if (i == 300) throw std::runtime_error("300");
    if (i == 9000) throw std::runtime_error("9000");
    return 0.0;
  };
  for (auto exec : {Execution::Serial, Execution::Parallel}) {
    try {
      map_indexed(10000, fn, exec);
      CHECK(false);
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "300");
    }
  }
}

TEST_CASE("counter rng") {
  const CounterRng a(42), b(42), c(43);
  CHECK(a.bits(3, 7) == b.bits(3, 7));
  CHECK(a.bits(3, 7) != c.bits(3, 7));
  CHECK(a.bits(3, 7) != a.bits(7, 3));
  double sum = 0.0, sum_sq = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const double u = a.uniform(1, i);
    CHECK((u > 0.0 && u < 1.0));
    sum += u;
    sum_sq += u * u;
  }
  CHECK(std::abs(sum / m - 0.5) < 5 * std::sqrt(1.0 / 12.0 / m));
  CHECK(std::abs(sum_sq / m - 1.0 / 3.0) < 0.005);
  CHECK(std::string(CounterRng::algorithm) == "splitmix64-counter");
}
