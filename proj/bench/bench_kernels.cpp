// Serial reference vs OpenMP kernels: wall time and agreement.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include "evt/analysis.hpp"

using namespace evt;
using kernels::Execution;

namespace {

template <class F>
double best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void line(const char* name, double serial, double parallel, double max_diff) {
  std::printf("%-34s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  max diff %.3g\n", name, serial, parallel,
              serial / parallel, max_diff);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", kernels::available_threads());

  const auto dist = DistributionSpec::log_weibull_like(1, 2, 1, SlowlyVarying::constant(1.0));
  std::vector<SampleSize> ns;
  for (int k = 2; k <= 9; ++k) ns.push_back(SampleSize::from_log(k * std::log(10.0)));
  const SupOnGrid sup{-2.0, 6.0, 321};
  ErrorCurve s_curve, p_curve;
  const double ts = best_of(3, [&] {
    s_curve = error_curve(dist, TwoTerm{}, sup, ns, CurveOptions{{}, 0.5, Execution::Serial});
  });
  const double tp = best_of(3, [&] {
    p_curve = error_curve(dist, TwoTerm{}, sup, ns, CurveOptions{{}, 0.5, Execution::Parallel});
  });
  double diff = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) diff = std::max(diff, std::abs(s_curve.points[i].error - p_curve.points[i].error));
  line("error_curve two_term sup (logweib)", ts, tp, diff);

  const auto ex = DistributionSpec::exponential();
  std::vector<double> s_sample, p_sample;
  const auto n = SampleSize::of(1000);
  const double ss = best_of(3, [&] { s_sample = simulate_max(ex, n, 200000, 7, {Execution::Serial}); });
  const double sp = best_of(3, [&] { p_sample = simulate_max(ex, n, 200000, 7, {Execution::Parallel}); });
  diff = 0.0;
  for (std::size_t i = 0; i < s_sample.size(); ++i) diff = std::max(diff, std::abs(s_sample[i] - p_sample[i]));
  line("simulate_max exp n=1e3 x 2e5", ss, sp, diff);
  return 0;
}
