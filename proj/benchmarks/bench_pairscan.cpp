// Microbenchmarks for the hot paths: the distance kernel with and without
// early abandoning, the reference-pruned closest-pair scan against brute
// force, and the packed match counting that backs the string searches.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "pairscan/datagen.hpp"
#include "pairscan/encoding.hpp"
#include "pairscan/lightbulb.hpp"
#include "pairscan/metrics.hpp"
#include "pairscan/refscan.hpp"
#include "pairscan/rng.hpp"
#include "pairscan/series.hpp"
#include "pairscan/symbols.hpp"

namespace {

using namespace pairscan;

std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.gaussian(0.0, 1.0);
  return v;
}

void BM_distance_full(benchmark::State& state) {
  const auto x = gaussian_vector(128, 1);
  const auto y = gaussian_vector(128, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(euclidean_distance(x, y));
  }
}
BENCHMARK(BM_distance_full);

// Tight threshold: the partial sum crosses it within a few terms, so this
// measures the abandon path, not the full scan.
void BM_distance_early_abandon(benchmark::State& state) {
  const auto x = gaussian_vector(128, 1);
  const auto y = gaussian_vector(128, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(euclidean_distance_early_abandon(x, y, 0.5));
  }
}
BENCHMARK(BM_distance_early_abandon);

const TimeSeries& bench_walk() {
  static const TimeSeries series = gen_random_walk(1200, 99);
  return series;
}

void BM_closest_pair_scaled_refs(benchmark::State& state) {
  const PointSet windows = PointSet::windows_of(bench_walk(), 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(closest_pair(windows, 10, 10.0, 7, 64));
  }
}
BENCHMARK(BM_closest_pair_scaled_refs);

void BM_closest_pair_unscaled_refs(benchmark::State& state) {
  const PointSet windows = PointSet::windows_of(bench_walk(), 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(closest_pair(windows, 10, 1.0, 7, 64));
  }
}
BENCHMARK(BM_closest_pair_unscaled_refs);

void BM_closest_pair_brute(benchmark::State& state) {
  const PointSet windows = PointSet::windows_of(bench_walk(), 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_closest_pair(windows, 64));
  }
}
BENCHMARK(BM_closest_pair_brute);

PackedBinaryMatrix packed_pair(std::size_t positions) {
  PackedBinaryMatrix m(2, positions);
  Rng rng(3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t p = 0; p < positions; ++p) m.set(i, p, rng.uniform_below(2) == 1);
  return m;
}

void BM_match_count_packed(benchmark::State& state) {
  const PackedBinaryMatrix m = packed_pair(4096);
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.match_count(0, 1));
  }
}
BENCHMARK(BM_match_count_packed);

void BM_match_count_per_symbol(benchmark::State& state) {
  const PackedBinaryMatrix m = packed_pair(4096);
  for (auto _ : state) {
    std::size_t matches = 0;
    for (std::size_t p = 0; p < m.position_count(); ++p) {
      matches += m.entry(0, p) == m.entry(1, p);
    }
    benchmark::DoNotOptimize(matches);
  }
}
BENCHMARK(BM_match_count_per_symbol);

void BM_bucket_iteration(benchmark::State& state) {
  const SymbolMatrix items = gen_binomial_matrix(512, 1024, 2, 11).transposed();
  std::uint64_t pass = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bucket_iteration(items, 10, derive_seed(5, pass++)));
  }
}
BENCHMARK(BM_bucket_iteration);

}  // namespace

BENCHMARK_MAIN();
