#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace evt::kernels {

enum class Execution { Serial, Parallel };

/// Evaluates fn(i) for i = 0..count-1 and returns the results in index
/// order. Serial is the reference loop; Parallel distributes indices over
/// OpenMP threads (falls back to the serial loop without OpenMP). If any
/// call throws, the exception of the smallest failing index is rethrown.
std::vector<double> map_indexed(std::size_t count, const std::function<double(std::size_t)>& fn, Execution execution);

/// max_i fn(i); same ordering and exception rules as map_indexed.
double max_indexed(std::size_t count, const std::function<double(std::size_t)>& fn, Execution execution);

int available_threads() noexcept;

/// Stateless counter-based generator: SplitMix64 finalizer applied to a hash
/// of (seed, stream, counter). Any (stream, counter) can be drawn in any
/// order, so parallel and serial runs see the same numbers.
class CounterRng {
 public:
  static constexpr const char* algorithm = "splitmix64-counter";

  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const noexcept;
  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform(std::uint64_t stream, std::uint64_t counter) const noexcept;

 private:
  std::uint64_t seed_;
};

}  // namespace evt::kernels
