// Serial reference kernels against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <omp.h>

#include "mptq/pair_table.hpp"
#include "mptq/reference.hpp"
#include "mptq/sampling.hpp"
#include "mptq/search.hpp"

using namespace mptq;

namespace {

void BM_SearchSerialReference(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const auto plan = plan_interval_search(n, SearchMode::mptq);
    const PairTable table = multiplicative_pair_table(plan.universe.multiplicative);
    std::uint64_t examined = 0;
    for (auto _ : state) {
        auto r = reference::dfs_search(table);
        examined += r.examined;
        benchmark::DoNotOptimize(r.found.size());
    }
    state.counters["subsets/s"] = benchmark::Counter(static_cast<double>(examined), benchmark::Counter::kIsRate);
}

void BM_SearchParallel(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const auto threads = static_cast<unsigned>(state.range(1));
    SearchOptions opt;
    opt.parallel_width = 10;
    std::uint64_t examined = 0;
    for (auto _ : state) {
        auto plan = plan_interval_search(n, SearchMode::mptq, opt);
        auto out = run_search(plan, {threads, 0, nullptr});
        examined += out.examined;
        benchmark::DoNotOptimize(out.complete);
    }
    state.counters["subsets/s"] = benchmark::Counter(static_cast<double>(examined), benchmark::Counter::kIsRate);
}

void BM_DensitySerialReference(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(reference::density_estimate(n, 20000, 1));
    state.SetItemsProcessed(state.iterations() * 20000);
}

void BM_DensityParallel(benchmark::State& state)
{
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const auto threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(density_estimate(n, 20000, 1, threads));
    state.SetItemsProcessed(state.iterations() * 20000);
}

void thread_args(benchmark::internal::Benchmark* b, std::vector<std::int64_t> sizes)
{
    const int max_threads = omp_get_max_threads();
    for (auto n : sizes) {
        for (int t = 1; t <= max_threads; t *= 2) b->Args({n, t});
        if ((max_threads & (max_threads - 1)) != 0) b->Args({n, max_threads});
    }
}

}  // namespace

BENCHMARK(BM_SearchSerialReference)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchParallel)->Apply([](auto* b) { thread_args(b, {20, 24}); })->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DensitySerialReference)->Arg(36)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensityParallel)->Apply([](auto* b) { thread_args(b, {36, 60}); })->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
