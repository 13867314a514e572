#include <benchmark/benchmark.h>

#include "levy/family.hpp"
#include "levy/fft.hpp"
#include "levy/hardy_stein.hpp"
#include "levy/square_fn.hpp"
#include "levy/workbench.hpp"

using namespace levy;

static void BM_Fft(benchmark::State& st) {
    const Grid g(int(st.range(0)), int(st.range(1)), 16.0);
    const Fft fft(g);
    std::vector<cplx> a(g.size(), 1.0), b(g.size());
    for (auto _ : st) {
        fft.plus(a.data(), b.data());
        benchmark::DoNotOptimize(b.data());
    }
}
BENCHMARK(BM_Fft)->Args({1, 512})->Args({1, 4096})->Args({2, 64})->Args({2, 256});

static void BM_Workbench(benchmark::State& st) {
    const Grid g(int(st.range(0)), int(st.range(1)), 16.0);
    for (auto _ : st) benchmark::DoNotOptimize(make_workbench(LevyModel::isotropic_stable(g.dim(), 1.5), g));
}
BENCHMARK(BM_Workbench)->Args({1, 512})->Args({2, 64})->Unit(benchmark::kMillisecond);

static void BM_HardyStein(benchmark::State& st) {
    const Grid g(1, int(st.range(0)), 16.0);
    const Workbench wb = make_workbench(LevyModel::isotropic_stable(1, 1.5), g);
    const GridFunction f = unit_gaussian().sample(g);
    for (auto _ : st) benchmark::DoNotOptimize(hardy_stein_rhs(wb.symbol, wb.jq, wb.tq, f, PExponent(1.5)));
}
BENCHMARK(BM_HardyStein)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_SquarePair(benchmark::State& st) {
    const Grid g(int(st.range(0)), int(st.range(1)), 16.0);
    const Workbench wb = make_workbench(LevyModel::isotropic_stable(g.dim(), 1.0), g);
    const GridFunction f = standard_family(g.dim(), 16.0)[3].sample(g);
    for (auto _ : st) benchmark::DoNotOptimize(square_G_pair(wb.symbol, wb.jq, wb.tq, f));
}
BENCHMARK(BM_SquarePair)->Args({1, 512})->Args({2, 32})->Args({2, 64})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
