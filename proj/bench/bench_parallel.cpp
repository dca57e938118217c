// Serial reference vs OpenMP for the two parallel paths: Monte-Carlo volume
// and search restarts.

#include <benchmark/benchmark.h>

#include "mahler/geometry.hpp"
#include "mahler/oracle.hpp"
#include "mahler/search.hpp"

namespace {

mahler::Polytope tetrahedron() {
  using mahler::vec3;
  return mahler::convex_hull({vec3(1, 1, -1), vec3(1, -1, 1), vec3(-1, 1, 1), vec3(-1, -1, -1)}, 3);
}

void BM_McVolumeSerial(benchmark::State& state) {
  const auto k = tetrahedron();
  const auto member = mahler::polytope_membership(k);
  const auto box = mahler::bounding_box(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mahler::mc_volume_serial(member, box, state.range(0), 1).mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_McVolumeParallel(benchmark::State& state) {
  const auto k = tetrahedron();
  const auto member = mahler::polytope_membership(k);
  const auto box = mahler::bounding_box(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mahler::mc_volume(member, box, state.range(0), 1).mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

mahler::SearchConfig search_config(int threads) {
  mahler::SearchConfig cfg;
  cfg.body_class = mahler::BodyClass::polygon(8);
  cfg.restarts = 8;
  cfg.max_iters = 500;
  cfg.seed = 7;
  cfg.threads = threads;
  return cfg;
}

void BM_SearchSerial(benchmark::State& state) {
  const auto cfg = search_config(1);
  for (auto _ : state) benchmark::DoNotOptimize(mahler::minimize_volume_product_serial(cfg).best_product);
}

void BM_SearchParallel(benchmark::State& state) {
  const auto cfg = search_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mahler::minimize_volume_product(cfg).best_product);
}

}  // namespace

BENCHMARK(BM_McVolumeSerial)->Arg(1 << 18)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McVolumeParallel)->Arg(1 << 18)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
