// OpenMP cohomology against the serial reference on bar complexes.

#include <benchmark/benchmark.h>

#include "emss/resolutions.hpp"

using namespace emss;

namespace {

BarComplex bar(unsigned ch, int n, int p_max)
{
    Algebra a(Field(ch), {Generator{"x", 2, 0, n}}, {}, AlgebraKind::truncated_polynomial);
    return BarComplex(ModuleSpec::regular(a), p_max);
}

void parallel(benchmark::State& state)
{
    BarComplex b = bar(0, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(cohomology(b.complex()));
}

void serial(benchmark::State& state)
{
    BarComplex b = bar(0, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state)
        benchmark::DoNotOptimize(cohomology_serial(b.complex()));
}

}  // namespace

BENCHMARK(parallel)->Args({2, 4})->Args({3, 4})->Args({3, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(serial)->Args({2, 4})->Args({3, 4})->Args({3, 5})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
