// Serial references against their OpenMP twins.

#include <benchmark/benchmark.h>

#include "fibertree/generators.hpp"
#include "fibertree/parallel.hpp"

using namespace fibertree;

namespace {

Barcode nested(int n) {
  std::vector<Bar> bars{{0, std::nullopt}};
  for (int k = 1; k < n; ++k) bars.push_back({k, Rational(4 * n - k, 2)});
  return Barcode(std::move(bars));
}

void BM_EnumerateSerial(benchmark::State& state) {
  Barcode d = nested(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_merge_trees(d));
}

void BM_EnumerateParallel(benchmark::State& state) {
  Barcode d = nested(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_merge_trees_parallel(d));
}

ConfigPath sample_path(int n) {
  Rng rng(11);
  auto x = std::make_shared<const GeometricTree>(random_branching_tree(rng, 9));
  auto fiber = enumerate_merge_trees(random_generic_barcode(rng, n));
  auto t = std::make_shared<const CellularMergeTree>(fiber.back());
  Configuration a(x, t, random_configuration(rng, *x, *t));
  Configuration b(x, t, random_configuration(rng, *x, *t));
  return connect(a, b);
}

void BM_AuditSerial(benchmark::State& state) {
  ConfigPath path = sample_path(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(audit_path(path));
}

void BM_AuditParallel(benchmark::State& state) {
  ConfigPath path = sample_path(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(audit_path_parallel(path));
}

std::vector<PLFunction> sample_functions(int count) {
  Rng rng(13);
  auto x = std::make_shared<const GeometricTree>(random_tree(rng, 12));
  std::vector<PLFunction> fs;
  for (int k = 0; k < count; ++k) fs.push_back(random_pl_function(rng, x, 3));
  return fs;
}

void BM_SupSerial(benchmark::State& state) {
  auto fs = sample_functions(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_sup_distances(fs));
}

void BM_SupParallel(benchmark::State& state) {
  auto fs = sample_functions(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_sup_distances_parallel(fs));
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->Arg(5)->Arg(7);
BENCHMARK(BM_EnumerateParallel)->Arg(5)->Arg(7);
BENCHMARK(BM_AuditSerial)->Arg(3)->Arg(5);
BENCHMARK(BM_AuditParallel)->Arg(3)->Arg(5);
BENCHMARK(BM_SupSerial)->Arg(16)->Arg(48);
BENCHMARK(BM_SupParallel)->Arg(16)->Arg(48);

BENCHMARK_MAIN();
