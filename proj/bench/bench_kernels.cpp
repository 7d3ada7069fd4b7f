// Serial reference paths against their OpenMP counterparts.
#include "heis/count.hpp"
#include "heis/energy.hpp"
#include "heis/surface.hpp"

#include <benchmark/benchmark.h>

using namespace heis;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_FastCount(benchmark::State& state) {
    const ShellQuery q(512, Rational(1, 8), HeisParams(2, 1));
    const SquaresTable table(1, table_extent(q.band()));
    for (auto _ : state) benchmark::DoNotOptimize(fast_count(q, table, exec_of(state)).count);
}

void BM_BruteCount(benchmark::State& state) {
    const ShellQuery q(20, Rational(1, 2), HeisParams(4, 1));
    for (auto _ : state) benchmark::DoNotOptimize(brute_count(q, exec_of(state)).count);
}

void BM_EnergyGrouped(benchmark::State& state) {
    const auto cfg = make_energy_config(81, 4, 1);
    for (auto _ : state) benchmark::DoNotOptimize(energy_grouped(cfg, exec_of(state)).value);
}

void BM_SigmaHat(benchmark::State& state) {
    SurfaceParam p;
    p.alpha = 4;
    for (auto _ : state) benchmark::DoNotOptimize(sigma_hat({64, 0, 32}, p, exec_of(state)).value);
}

} // namespace

BENCHMARK(BM_FastCount)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteCount)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnergyGrouped)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SigmaHat)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
