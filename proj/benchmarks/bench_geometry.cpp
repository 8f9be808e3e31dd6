#include <benchmark/benchmark.h>

#include <random>

#include "lidartwin/bvh.hpp"
#include "lidartwin/mesh.hpp"

using namespace lidartwin;

namespace {

TriangleMesh make_soup(std::size_t triangles) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-50.0, 50.0);
    std::uniform_real_distribution<double> e(0.3, 1.2);
    TriangleMesh mesh;
    while (mesh.triangle_count() < triangles) {
        const Vec3 a{d(rng), d(rng), d(rng)};
        const Vec3 b = a + Vec3{e(rng), e(rng) * 0.2, e(rng) * 0.1};
        const Vec3 c = a + Vec3{e(rng) * 0.1, e(rng), e(rng) * 0.3};
        const std::uint32_t base = static_cast<std::uint32_t>(mesh.vertices.size());
        mesh.vertices.insert(mesh.vertices.end(), {a, b, c});
        mesh.triangles.push_back({base, base + 1, base + 2});
        mesh.semantic_tags.push_back(0);
    }
    return mesh;
}

}  // namespace

static void BM_BuildBvh(benchmark::State& state) {
    const TriangleMesh mesh = make_soup(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        Bvh bvh = build_bvh(mesh);
        benchmark::DoNotOptimize(bvh);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildBvh)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_RayIntersect(benchmark::State& state) {
    const TriangleMesh mesh = make_soup(static_cast<std::size_t>(state.range(0)));
    const Bvh bvh = build_bvh(mesh);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::size_t i = 0;
    for (auto _ : state) {
        Ray ray;
        ray.origin = {d(rng) * 40.0, d(rng) * 40.0, d(rng) * 40.0};
        ray.direction = Vec3{d(rng), d(rng), d(rng) + 1e-3}.normalized();
        ray.t_max = 200.0;
        benchmark::DoNotOptimize(intersect(ray, bvh, mesh));
        ++i;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RayIntersect)->Arg(10000)->Arg(100000);

static void BM_PointToMesh(benchmark::State& state) {
    const TriangleMesh mesh = make_soup(static_cast<std::size_t>(state.range(0)));
    const Bvh bvh = build_bvh(mesh);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-60.0, 60.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(point_to_mesh_distance({d(rng), d(rng), d(rng)}, bvh, mesh));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PointToMesh)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
