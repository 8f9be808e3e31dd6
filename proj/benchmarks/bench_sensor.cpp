#include <benchmark/benchmark.h>

#include "lidartwin/bvh.hpp"
#include "lidartwin/sensor.hpp"

using namespace lidartwin;

namespace {

TriangleMesh ground_plane() {
    TriangleMesh mesh;
    mesh.vertices = {{-500, -500, 0}, {500, -500, 0}, {500, 500, 0}, {-500, 500, 0}};
    mesh.triangles = {{0, 1, 2}, {0, 2, 3}};
    mesh.semantic_tags = {1, 1};
    return mesh;
}

}  // namespace

static void BM_ScanFrame(benchmark::State& state) {
    const TriangleMesh ground = ground_plane();
    const Bvh bvh = build_bvh(ground);
    SceneSnapshot snap;
    snap.static_mesh = &ground;
    snap.static_bvh = &bvh;

    SensorSpec spec;
    spec.channels = static_cast<std::uint32_t>(state.range(0));
    spec.horizontal_resolution = 0.4;
    spec.v_fov_min = -45.0;
    spec.v_fov_max = -5.0;
    spec.range_max = 150.0;
    spec.noise_sigma = 0.02;
    spec.dropout_prob = 0.05;
    SensorPose pose;
    pose.position = {0, 0, 5.0};

    const ScanPattern pattern = build_scan_pattern(spec);
    std::uint64_t frame = 0;
    for (auto _ : state) {
        SceneSnapshot s = snap;
        s.frame_index = frame++;
        benchmark::DoNotOptimize(scan_frame(pattern, spec, pose, s, 42));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pattern.size()));
}
BENCHMARK(BM_ScanFrame)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
