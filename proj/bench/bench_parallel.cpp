// Serial reference vs OpenMP mesh evaluation. NILCAT_THREADS caps the parallel runs.
#include <benchmark/benchmark.h>

#include "nilcat/catenoid.hpp"
#include "nilcat/cmc.hpp"
#include "nilcat/parallel.hpp"

using namespace nilcat;

namespace {

const CatenoidModel& catenoid() {
  static const CatenoidModel m = build_catenoid(1.0);
  return m;
}

const CmcAnnulusModel& annulus() {
  static const CmcAnnulusModel m = build_cmc_annulus(1.0);
  return m;
}

void BM_catenoid_mesh(benchmark::State& st) {
  const bool par = st.range(1) != 0;
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(mesh_catenoid(catenoid(), {-3, 3, n, n, par}));
  st.counters["threads"] = par ? parallel::max_threads() : 1;
  st.SetItemsProcessed(st.iterations() * n * n);
}

void BM_cmc_mesh(benchmark::State& st) {
  const bool par = st.range(1) != 0;
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(
        reflect_and_mesh(annulus(), {.nu = n, .nv = n / 2, .parallel = par}));
  st.counters["threads"] = par ? parallel::max_threads() : 1;
  st.SetItemsProcessed(st.iterations() * n * n / 2);
}

}  // namespace

BENCHMARK(BM_catenoid_mesh)->ArgsProduct({{64, 256}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_cmc_mesh)->ArgsProduct({{64, 256}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
