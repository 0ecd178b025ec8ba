#include <benchmark/benchmark.h>

#include "qcorr/entanglement.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/monogamy.hpp"

using namespace qcorr;

static void BM_Eigh(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto rho = random_density({d}, d, 1);
    for (auto _ : state) benchmark::DoNotOptimize(eigh(rho.op()));
}
BENCHMARK(BM_Eigh)->Arg(4)->Arg(8)->Arg(16)->Arg(64);

static void BM_PartialTrace(benchmark::State& state) {
    const auto db = static_cast<std::size_t>(state.range(0));
    const auto rho = random_density({2, db, 2}, 4, 2);
    const std::vector<std::size_t> keep{0, 2};
    for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho.op(), rho.dims(), keep));
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(4)->Arg(8);

static void BM_Entropy(benchmark::State& state) {
    const auto rho = random_density({2, 4}, 8, 3);
    for (auto _ : state) benchmark::DoNotOptimize(von_neumann_entropy(rho));
}
BENCHMARK(BM_Entropy);

static void BM_ClassicalCorrelation(benchmark::State& state) {
    const auto db = static_cast<std::size_t>(state.range(0));
    const auto rho = random_density({2, db}, 2 * db, 4);
    const auto part = Partition::per_factor(2);
    for (auto _ : state) benchmark::DoNotOptimize(classical_correlation(rho, part, "A", "B").value);
}
BENCHMARK(BM_ClassicalCorrelation)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_Concurrence(benchmark::State& state) {
    const auto rho = random_density({2, 2}, 4, 5);
    for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

static void BM_StructureExtract(benchmark::State& state) {
    const auto rho = constructed_saturating_state(2, 2, 4, 6);
    const auto part = Partition::per_factor(2);
    for (auto _ : state) benchmark::DoNotOptimize(structure_extract(rho, part));
}
BENCHMARK(BM_StructureExtract);
BENCHMARK_MAIN();
