#include <benchmark/benchmark.h>
#include <omp.h>

#include "cbundle/oracle.hpp"
#include "cbundle/pic_lattice.hpp"
#include "cbundle/propagate.hpp"
#include "cbundle/surface.hpp"

using namespace cbundle;

namespace {

SurfaceModel instance() {
  TrilinearSurface s;
  const long c[8] = {1, 1, 0, -1, 1, 0, 2, 1};
  for (int i = 0; i < 8; ++i) s.c[i] = c[i];
  return s;
}

SurfacePoint seed() { return {{Proj1{0, 1}, Proj1{0, 1}, Proj1{1, -2}}, std::nullopt}; }

// range(0) == 0 runs the serial reference, otherwise that many threads.
void set_threads(const benchmark::State& st) {
  if (st.range(0) > 0) omp_set_num_threads(static_cast<int>(st.range(0)));
}

void BM_enumerate_conic_d1(benchmark::State& st) {
  set_threads(st);
  const auto lat = pic::Lattice::of_degree(1);
  for (auto _ : st) {
    auto v = st.range(0) == 0 ? pic::enumerate_classes_serial(lat, pic::kConic) : pic::enumerate_classes(lat, pic::kConic);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_enumerate_conic_d1)->Arg(0)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_oracle_points(benchmark::State& st) {
  set_threads(st);
  const auto s = instance();
  for (auto _ : st) {
    auto v = st.range(0) == 0 ? oracle::enumerate_points_serial(s, 20) : oracle::enumerate_points(s, 20);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_oracle_points)->Arg(0)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_propagate(benchmark::State& st) {
  set_threads(st);
  const auto s = instance();
  PropagationConfig cfg;
  for (auto _ : st) {
    auto r = st.range(0) == 0 ? propagate_serial(s, seed(), cfg) : propagate(s, seed(), cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_propagate)->Arg(0)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
