#include <benchmark/benchmark.h>

#include <random>

#include "lidartwin/metrics.hpp"

using namespace lidartwin;

namespace {

PointCloud make_cloud(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-40.0, 40.0);
    PointCloud c;
    c.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) c.points.push_back({d(rng), d(rng), d(rng)});
    return c;
}

}  // namespace

static void BM_HausdorffP95(benchmark::State& state) {
    const PointCloud a = make_cloud(static_cast<std::size_t>(state.range(0)), 1);
    const PointCloud b = make_cloud(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(hausdorff_p95(a, b));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_HausdorffP95)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_JsDivergence(benchmark::State& state) {
    const PointCloud a = make_cloud(static_cast<std::size_t>(state.range(0)), 3);
    const PointCloud b = make_cloud(static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) benchmark::DoNotOptimize(js_divergence(a, b, 0.5));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_JsDivergence)->Arg(1000)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
