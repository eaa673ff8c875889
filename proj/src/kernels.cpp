#include "evt/kernels.hpp"

#include <algorithm>
#include <exception>

#if defined(EVT_HAVE_OPENMP)
#include <omp.h>
#endif

namespace evt::kernels {

namespace {

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<double> map_serial(std::size_t count, const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
  return out;
}

std::vector<double> map_parallel(std::size_t count, const std::function<double(std::size_t)>& fn) {
#if defined(EVT_HAVE_OPENMP)
  std::vector<double> out(count);
  std::vector<std::exception_ptr> failures(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return out;
#else
  return map_serial(count, fn);
#endif
}

}  // namespace

std::vector<double> map_indexed(std::size_t count, const std::function<double(std::size_t)>& fn,
                                Execution execution) {
  return execution == Execution::Parallel ? map_parallel(count, fn) : map_serial(count, fn);
}

double max_indexed(std::size_t count, const std::function<double(std::size_t)>& fn, Execution execution) {
  const auto values = map_indexed(count, fn, execution);
  if (values.empty()) return 0.0;
  return *std::max_element(values.begin(), values.end());
}

int available_threads() noexcept {
#if defined(EVT_HAVE_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t counter) const noexcept {
  return splitmix64(splitmix64(splitmix64(seed_) ^ stream) ^ counter);
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t counter) const noexcept {
  return (static_cast<double>(bits(stream, counter) >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace evt::kernels
