// Serial reference vs OpenMP kernels on the heaviest trial loops.
// Run with OMP_NUM_THREADS set to compare scaling.

#include <benchmark/benchmark.h>

#include "symdom/invariant.hpp"

using namespace symdom;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void BM_WallachSearchSym2(benchmark::State& state) {
    const Domain D(parse_family("sym", 2));
    WallachSearchOptions opt;
    opt.trials = 200;
    opt.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(wallach_search(D, 0.25, opt).min_eigenvalue);
}

void BM_BergmanDisc(benchmark::State& state) {
    const Domain D(parse_family("disc", 1));
    const auto f = from_polynomial(SparsePolynomial::constant(1, cd(1.0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(bergman_norm_mc(D, f, 3.0, Realization::Bounded, 100000, 1, exec_of(state)).value);
}

void BM_PrebuildSym2(benchmark::State& state) {
    const Domain D(parse_family("sym", 2));
    OrbitSpanOptions opt;
    opt.exec = exec_of(state);
    for (auto _ : state) {
        ProjectionCache cache(D, opt);
        cache.prebuild(8);
        benchmark::ClobberMemory();
    }
}

}  // namespace

BENCHMARK(BM_WallachSearchSym2)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BergmanDisc)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrebuildSym2)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
