// Acceptance suite: every release criterion as one executable check with a
// single PASS/FAIL line. Run with no arguments for the full suite or with a
// criterion number to run one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <sstream>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "commands.hpp"
#include "lidartwin/bvh.hpp"
#include "lidartwin/dataset_io.hpp"
#include "lidartwin/fs_util.hpp"
#include "lidartwin/labels.hpp"
#include "lidartwin/metrics.hpp"
#include "lidartwin/obj_io.hpp"
#include "lidartwin/pipeline.hpp"
#include "lidartwin/report.hpp"
#include "lidartwin/scenario.hpp"
#include "lidartwin/scene_config.hpp"
#include "lidartwin/sensor.hpp"

#include "../test_support.hpp"

using namespace lidartwin;
using namespace lidartwin::test;
namespace fs = std::filesystem;

#define EXPECT(cond)                                                              \
    do {                                                                          \
        if (!(cond)) {                                                            \
            std::printf("       failed: %s (line %d)\n", #cond, __LINE__);        \
            ok = false;                                                           \
        }                                                                         \
    } while (0)

namespace {

PointCloud cloud_of(std::vector<Vec3> pts) {
    PointCloud c;
    c.points = std::move(pts);
    return c;
}

// ---- criterion 1: metric oracle equivalence -------------------------------

bool criterion_metric_oracles() {
    bool ok = true;
    TestRng rng(20240001);

    for (int pair = 0; pair < 50; ++pair) {
        const std::size_t na = 1 + rng() % 500;
        const std::size_t nb = 1 + rng() % 500;
        const std::vector<Vec3> a = random_cloud(rng, na);
        const std::vector<Vec3> b = random_cloud(rng, nb);

        const double h_fast = hausdorff_p95(cloud_of(a), cloud_of(b));
        const double h_slow = brute_force_hausdorff_p95(a, b);
        EXPECT(std::abs(h_fast - h_slow) <= 1e-9);

        const double j_fast = js_divergence(cloud_of(a), cloud_of(b), 0.5);
        const double j_slow = reference_jsd(a, b, 0.5);
        EXPECT(std::abs(j_fast - j_slow) <= 1e-12);
    }

    for (int pair = 0; pair < 20; ++pair) {
        const TriangleMesh mesh = random_mesh(rng, 20 + rng() % 280);
        const Bvh bvh = build_bvh(mesh);
        const std::vector<Vec3> pts = random_cloud(rng, 1 + rng() % 500, -12, 12);

        const double fast = p2m_mean(cloud_of(pts), bvh, mesh);
        double slow = 0.0;
        for (const Vec3& p : pts) slow += brute_force_point_to_mesh(p, mesh);
        slow /= static_cast<double>(pts.size());
        EXPECT(std::abs(fast - slow) <= 1e-9);
    }
    return ok;
}

// ---- criterion 2: directional reproduction of the DT advantage ------------

TriangleMesh toy_site_mesh(bool displaced) {
    // ground plane + three structures; the displaced variant shifts and
    // reshuffles them and lifts the ground by more than a voxel
    const double ground_z = displaced ? 0.8 : 0.0;
    TriangleMesh site = plane_mesh(80.0, ground_z, kSemanticRoad);

    struct Block {
        Vec3 dims;
        Vec3 base;
        double heading;
    };
    std::vector<Block> blocks;
    if (!displaced) {
        blocks = {{{10, 6, 5}, {25, 18, 0}, 0.3},
                  {{8, 8, 7}, {-30, 10, 0}, -0.4},
                  {{14, 5, 4}, {5, -32, 0}, 1.1}};
    } else {
        blocks = {{{9, 7, 6}, {38, -20, 0.8}, 1.2},
                  {{12, 6, 5}, {-18, 35, 0.8}, 0.1},
                  {{7, 9, 8}, {-35, -28, 0.8}, -0.9}};
    }
    for (const Block& blk : blocks) {
        TriangleMesh box = make_box_mesh(blk.dims, kSemanticBackground);
        const Mat3 rot = Mat3::rot_z(blk.heading);
        for (Vec3& v : box.vertices) v = rot * v + blk.base;
        const std::uint32_t base = static_cast<std::uint32_t>(site.vertices.size());
        site.vertices.insert(site.vertices.end(), box.vertices.begin(), box.vertices.end());
        for (const auto& tri : box.triangles)
            site.triangles.push_back({tri[0] + base, tri[1] + base, tri[2] + base});
        site.semantic_tags.insert(site.semantic_tags.end(), box.semantic_tags.begin(),
                                  box.semantic_tags.end());
    }
    return site;
}

SceneConfig toy_scene_config(const std::string& mesh_path, std::uint64_t seed,
                             bool trucks_heavy) {
    SceneConfig cfg;
    cfg.mesh.path = mesh_path;
    cfg.seed = seed;
    cfg.frames = 6;
    cfg.dt = 0.1;

    SensorConfig sensor;
    sensor.name = "lidar";
    sensor.spec.channels = 24;
    sensor.spec.horizontal_resolution = 3.0;
    sensor.spec.h_fov_start = 0.0;
    sensor.spec.h_fov_end = 360.0;
    sensor.spec.v_fov_min = -35.0;
    sensor.spec.v_fov_max = 5.0;
    sensor.spec.range_max = 120.0;
    sensor.spec.noise_sigma = 0.02;
    sensor.spec.dropout_prob = 0.02;
    sensor.pose.position = {0.0, 0.0, 6.0};
    cfg.sensors.push_back(sensor);

    PathLoop loop;
    loop.id = "ring";
    loop.speed_limit = 14.0;
    loop.waypoints = {{18, -12, 0}, {18, 12, 0}, {-18, 12, 0}, {-18, -12, 0}, {18, -12, 0}};
    cfg.paths.push_back(loop);

    cfg.spawn_points = {{"ring", 5.0}, {"ring", 35.0}, {"ring", 70.0}};
    cfg.catalog = {
        {"car", {4.5, 1.9, 1.6}, 11.0, 2},
        {"truck", {8.5, 2.6, 3.4}, 9.0, 3},
        {"bus", {11.0, 2.6, 3.1}, 8.0, 4},
    };
    if (trucks_heavy)
        cfg.distribution.weights = {{"car", 0.1}, {"truck", 0.2}, {"bus", 0.7}};
    else
        cfg.distribution.weights = {{"car", 0.7}, {"truck", 0.2}, {"bus", 0.1}};
    return cfg;
}

bool criterion_directional_reproduction() {
    bool ok = true;
    TempDir tmp("acc_directional");

    SemanticPalette palette;
    save_obj(tmp.str("reality.obj"), toy_site_mesh(false), palette);
    save_obj(tmp.str("arbitrary.obj"), toy_site_mesh(true), palette);

    // "reality" is an independent draw; DT and the arbitrary scene share the
    // generation seed so only geometry and traffic mix differ
    SimulateOptions options;
    options.warmup_steps = 50;
    run_simulation(toy_scene_config(tmp.str("reality.obj"), 7, false), tmp.str("ref"), options);
    run_simulation(toy_scene_config(tmp.str("reality.obj"), 42, false), tmp.str("dt"), options);
    run_simulation(toy_scene_config(tmp.str("arbitrary.obj"), 42, true), tmp.str("arb"), options);

    EvaluateOptions eval;
    eval.reference = tmp.str("ref");
    eval.reference_mesh = tmp.str("reality.obj");
    eval.voxel_size = 0.5;

    eval.candidate_dir = tmp.str("dt");
    const DatasetEval dt = run_evaluate(eval);
    eval.candidate_dir = tmp.str("arb");
    const DatasetEval arb = run_evaluate(eval);

    const FidelityReport report = aggregate(dt, arb);
    EXPECT(report.hausdorff_p95.mean_candidate.has_value());
    EXPECT(*report.hausdorff_p95.mean_candidate < *report.hausdorff_p95.mean_baseline);
    EXPECT(*report.jsd.mean_candidate < *report.jsd.mean_baseline);
    EXPECT(*report.p2m.mean_candidate < *report.p2m.mean_baseline);
    EXPECT(*report.hausdorff_p95.reduction_pct > 20.0);
    EXPECT(*report.jsd.reduction_pct > 20.0);
    EXPECT(*report.p2m.reduction_pct > 20.0);

    std::printf("       means (dt vs arb): P95 %.3f/%.3f  JSD %.3f/%.3f  P2M %.3f/%.3f\n",
                *report.hausdorff_p95.mean_candidate, *report.hausdorff_p95.mean_baseline,
                *report.jsd.mean_candidate, *report.jsd.mean_baseline,
                *report.p2m.mean_candidate, *report.p2m.mean_baseline);
    return ok;
}

// ---- criterion 3: aggregate arithmetic on the reference means --------------

bool criterion_aggregate_arithmetic() {
    bool ok = true;
    auto eval_of = [](double h, double j, double p) {
        DatasetEval e;
        PairMetrics pm;
        pm.frame = 0;
        pm.hausdorff_p95 = h;
        pm.jsd = j;
        pm.p2m_mean = p;
        e.pairs.push_back(pm);
        e.compute_means();
        return e;
    };
    const FidelityReport report =
        aggregate(eval_of(3.645, 0.184, 0.795), eval_of(12.237, 0.505, 2.648));
    EXPECT(*report.hausdorff_p95.reduction_pct == 70.2);
    EXPECT(std::abs(*report.jsd.reduction_pct - 63.6) <= 0.2);
    EXPECT(std::abs(*report.p2m.reduction_pct - 70.0) <= 0.2);
    return ok;
}

// ---- criterion 4: sensor noise and dropout statistics ----------------------

bool criterion_sensor_statistics() {
    bool ok = true;
    const TriangleMesh ground = plane_mesh(400.0, 0.0, kSemanticRoad);
    const Bvh bvh = build_bvh(ground);
    SceneSnapshot snap;
    snap.static_mesh = &ground;
    snap.static_bvh = &bvh;

    SensorSpec spec;
    spec.channels = 100;
    spec.horizontal_resolution = 0.36;
    spec.v_fov_min = -80.0;
    spec.v_fov_max = -30.0;
    spec.range_max = 50.0;
    spec.noise_sigma = 0.04;
    SensorPose pose;
    pose.position = {0.0, 0.0, 2.0};

    const ScanPattern pattern = build_scan_pattern(spec);
    EXPECT(pattern.size() >= 100000);

    const RawFrame noisy = scan_frame(pattern, spec, pose, snap, 2024);
    EXPECT(noisy.returns.size() == pattern.size());
    double sum = 0.0, sum_sq = 0.0;
    for (const RawReturn& r : noisy.returns) {
        const double el = deg_to_rad(pattern.beams[r.ray_index].elevation_deg);
        const double err = (r.position - pose.position).norm() - 2.0 / -std::sin(el);
        sum += err;
        sum_sq += err * err;
    }
    const double n = static_cast<double>(noisy.returns.size());
    const double stddev = std::sqrt(sum_sq / n - (sum / n) * (sum / n));
    EXPECT(std::abs(stddev - spec.noise_sigma) <= 0.05 * spec.noise_sigma);

    SensorSpec dropout_spec = spec;
    dropout_spec.noise_sigma = 0.0;
    dropout_spec.dropout_prob = 0.25;
    const RawFrame dropped = scan_frame(pattern, dropout_spec, pose, snap, 2025);
    const double drop_frac = 1.0 - static_cast<double>(dropped.returns.size()) / n;
    EXPECT(std::abs(drop_frac - dropout_spec.dropout_prob) <= 0.02);

    SensorSpec clean_spec = spec;
    clean_spec.noise_sigma = 0.0;
    const RawFrame clean = scan_frame(pattern, clean_spec, pose, snap, 2026);
    EXPECT(clean.returns.size() == pattern.size());
    std::size_t on_surface = 0;
    for (const RawReturn& r : clean.returns)
        if (point_to_mesh_distance(r.position, bvh, ground) < 1e-6) ++on_surface;
    EXPECT(on_surface == clean.returns.size());
    return ok;
}

// ---- criterion 5: empty boxes for out-of-range actors ----------------------

bool criterion_label_completeness() {
    bool ok = true;
    TempDir tmp("acc_labels");

    SemanticPalette palette;
    save_obj(tmp.str("site.obj"), plane_mesh(60.0, 0.0, kSemanticRoad), palette);

    SceneConfig cfg;
    cfg.mesh.path = tmp.str("site.obj");
    cfg.seed = 5;
    cfg.frames = 5;
    cfg.dt = 0.1;
    SensorConfig sensor;
    sensor.spec.channels = 8;
    sensor.spec.horizontal_resolution = 4.0;
    sensor.spec.v_fov_min = -40.0;
    sensor.spec.v_fov_max = 0.0;
    sensor.spec.range_max = 25.0;  // the far loop stays far outside this
    sensor.pose.position = {0.0, 0.0, 4.0};
    cfg.sensors.push_back(sensor);

    PathLoop near;
    near.id = "near";
    near.waypoints = {{10, -8, 0}, {10, 8, 0}, {-10, 8, 0}, {-10, -8, 0}, {10, -8, 0}};
    near.speed_limit = 10.0;
    PathLoop far;
    far.id = "far";  // entirely beyond range_max
    far.waypoints = {{200, -10, 0}, {200, 10, 0}, {190, 10, 0}, {190, -10, 0}, {200, -10, 0}};
    far.speed_limit = 10.0;
    cfg.paths = {near, far};
    cfg.spawn_points = {{"near", 0.0}, {"far", 5.0}};
    cfg.catalog = {{"car", {4.5, 1.9, 1.6}, 8.0, 2}};
    cfg.distribution.weights = {{"car", 1.0}};

    SimulateOptions options;
    options.warmup_steps = 0;
    run_simulation(cfg, tmp.str("out"), options);

    const std::vector<LabeledFrame> frames = read_dataset(tmp.str("out"));
    EXPECT(frames.size() == 5);

    // identify the far actor: its box center distance stays > range_max
    std::map<std::uint32_t, bool> always_far;
    for (const LabeledFrame& f : frames)
        for (const Box3D& b : f.boxes) {
            const double dist = std::sqrt(b.cx * b.cx + b.cy * b.cy + b.cz * b.cz);
            auto [it, inserted] = always_far.try_emplace(b.track_id, true);
            it->second = it->second && dist > sensor.spec.range_max;
        }
    std::uint32_t far_track = 0;
    for (const auto& [track, is_far] : always_far)
        if (is_far) far_track = track;
    EXPECT(far_track != 0);

    for (const LabeledFrame& f : frames) {
        bool present = false;
        for (const Box3D& b : f.boxes)
            if (b.track_id == far_track) {
                present = true;
                EXPECT(b.num_points == 0);
            }
        EXPECT(present);
        EXPECT(f.boxes.size() == 2);  // every live actor, every frame
    }
    return ok;
}

// ---- criterion 6: dataset round trip at 100 frames -------------------------

bool criterion_round_trip() {
    bool ok = true;
    TempDir tmp("acc_roundtrip");

    SemanticPalette palette;
    save_obj(tmp.str("site.obj"), plane_mesh(60.0, 0.0, kSemanticRoad), palette);

    SceneConfig cfg;
    cfg.mesh.path = tmp.str("site.obj");
    cfg.seed = 99;
    cfg.frames = 100;
    cfg.dt = 0.1;
    SensorConfig sensor;
    sensor.spec.channels = 4;
    sensor.spec.horizontal_resolution = 6.0;
    sensor.spec.v_fov_min = -50.0;
    sensor.spec.v_fov_max = -10.0;
    sensor.spec.range_max = 60.0;
    sensor.spec.noise_sigma = 0.02;
    sensor.spec.dropout_prob = 0.05;
    sensor.pose.position = {0.0, 0.0, 5.0};
    cfg.sensors.push_back(sensor);
    PathLoop loop;
    loop.id = "ring";
    loop.waypoints = {{15, -10, 0}, {15, 10, 0}, {-15, 10, 0}, {-15, -10, 0}, {15, -10, 0}};
    loop.speed_limit = 12.0;
    cfg.paths = {loop};
    cfg.spawn_points = {{"ring", 0.0}, {"ring", 40.0}};
    cfg.catalog = {{"car", {4.5, 1.9, 1.6}, 10.0, 2}};
    cfg.distribution.weights = {{"car", 1.0}};

    run_simulation(cfg, tmp.str("ds"), SimulateOptions{});

    DatasetManifest manifest;  // read verifies every CRC32
    const std::vector<LabeledFrame> frames = read_dataset(tmp.str("ds"), &manifest);
    EXPECT(frames.size() == 100);

    // writing the read frames back must reproduce every byte
    write_dataset(frames, tmp.str("ds2"), manifest.palette, manifest.sensor_name, manifest.spec,
                  manifest.pose);
    for (const auto& entry : fs::recursive_directory_iterator(tmp.str("ds"))) {
        if (!entry.is_regular_file()) continue;
        const std::string rel = fs::relative(entry.path(), tmp.str("ds")).string();
        if (rel == "run_manifest.json") continue;
        const std::string original = read_file(entry.path().string());
        const std::string rewritten = read_file(tmp.str("ds2/" + rel));
        EXPECT(original == rewritten);
        if (original != rewritten) {
            std::printf("       mismatch in %s\n", rel.c_str());
            break;
        }
    }
    return ok;
}

// ---- criterion 7: end-to-end determinism -----------------------------------

void write_toy_scene_json(const std::string& dir) {
    SemanticPalette palette;
    save_obj(dir + "/site.obj", toy_site_mesh(false), palette);
    const std::string scene = R"({
  "mesh": {"path": "site.obj"},
  "sensors": [{
    "spec": {"channels": 10, "horizontal_resolution": 4.0, "h_fov": [0, 360],
             "v_fov": [-40, 0], "range_max": 90.0, "noise_sigma": 0.02, "dropout_prob": 0.1},
    "pose": {"position": [0, 0, 6], "yaw": 10, "pitch": 2, "roll": 0}
  }],
  "paths": [{"id": "ring", "speed_limit": 14.0,
             "waypoints": [[18,-12,0],[18,12,0],[-18,12,0],[-18,-12,0],[18,-12,0]]}],
  "spawn_points": [{"path_id": "ring", "arc_offset": 5.0}, {"path_id": "ring", "arc_offset": 45.0}],
  "distribution": {"car": 0.6, "truck": 0.4},
  "catalog": [
    {"class": "car", "dims": [4.5,1.9,1.6], "cruise_speed": 11.0, "semantic_tag": 2},
    {"class": "truck", "dims": [8.5,2.6,3.4], "cruise_speed": 9.0, "semantic_tag": 3}
  ],
  "signals": [{"path_id": "ring", "arc_position": 20.0, "green": 8, "red": 8, "offset": 0}],
  "seed": 1234,
  "frames": 4,
  "dt": 0.1
})";
    write_file_atomic(dir + "/scene.json", scene);
}

std::map<std::string, std::string> tree_bytes(const std::string& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string rel = fs::relative(entry.path(), dir).string();
        if (rel == "run_manifest.json") continue;  // carries wall-clock timings
        files[rel] = read_file(entry.path().string());
    }
    return files;
}

// Quiets the CLI's progress lines for in-process invocations.
struct CerrSilencer {
    CerrSilencer() : old_(std::cerr.rdbuf(sink_.rdbuf())) {}
    ~CerrSilencer() { std::cerr.rdbuf(old_); }

private:
    std::ostringstream sink_;
    std::streambuf* old_;
};

bool criterion_determinism() {
    bool ok = true;
    TempDir tmp("acc_determinism");
    write_toy_scene_json(tmp.str());
    CerrSilencer quiet;

    using lidartwin::cli::run_cli;
    EXPECT(run_cli({"simulate", "--scene", tmp.str("scene.json"), "--out", tmp.str("a"),
                    "--warmup", "20"}) == 0);
    EXPECT(run_cli({"simulate", "--scene", tmp.str("scene.json"), "--out", tmp.str("b"),
                    "--warmup", "20"}) == 0);
    EXPECT(tree_bytes(tmp.str("a")) == tree_bytes(tmp.str("b")));

    EXPECT(run_cli({"evaluate", "--candidate", tmp.str("a"), "--reference", tmp.str("b"),
                    "--mesh", tmp.str("site.obj"), "--out", tmp.str("r1.json")}) == 0);
    EXPECT(run_cli({"evaluate", "--candidate", tmp.str("a"), "--reference", tmp.str("b"),
                    "--mesh", tmp.str("site.obj"), "--out", tmp.str("r2.json")}) == 0);
    EXPECT(read_file(tmp.str("r1.json")) == read_file(tmp.str("r2.json")));
    return ok;
}

// ---- criterion 8: scenario invariants over 10^4 steps -----------------------

bool criterion_scenario_invariants() {
    bool ok = true;

    PathLoop a;
    a.id = "a";
    a.waypoints = {{30, -15, 0}, {30, 15, 0}, {-30, 15, 0}, {-30, -15, 0}, {30, -15, 0}};
    a.speed_limit = 16.0;
    PathLoop b;
    b.id = "b";
    b.waypoints = {{0, 40, 0}, {25, 60, 0}, {0, 80, 0}, {-25, 60, 0}, {0, 40, 0}};
    b.speed_limit = 12.0;

    SignalController sig;
    sig.path_id = "a";
    sig.arc_position = 45.0;
    sig.green_s = 12.0;
    sig.red_s = 10.0;
    sig.offset_s = 3.0;

    std::vector<ActorCatalogEntry> catalog = {
        {"car", {4.5, 1.9, 1.6}, 13.0, 2},
        {"truck", {8.0, 2.5, 3.2}, 9.0, 3},
        {"bicycle", {1.8, 0.6, 1.4}, 5.0, 4},
    };

    World world({a, b}, {sig}, catalog);
    world.spawn_actors({{"a", 0.0}, {"a", 30.0}, {"a", 70.0}, {"a", 110.0}},
                       ClassDistribution{{{"car", 0.5}, {"truck", 0.3}, {"bicycle", 0.2}}}, 4, 11);
    world.spawn_actors({{"b", 10.0}, {"b", 60.0}}, ClassDistribution{{{"car", 1.0}}}, 2, 12);
    const std::size_t actor_count = world.actors().size();
    EXPECT(actor_count == 6);

    const double len_a = world.paths()[0].length();
    auto gap = [](double from, double to, double len) {
        double g = std::fmod(to - from, len);
        return g < 0 ? g + len : g;
    };

    // cyclic order fingerprint per loop
    auto order_of = [&](std::uint32_t path) {
        std::vector<std::pair<double, std::uint32_t>> at;
        double base = -1.0;
        for (const ActorState& s : world.actors())
            if (s.path_index == path) {
                if (base < 0) base = s.arc_position;
                at.emplace_back(gap(base, s.arc_position, world.paths()[path].length()),
                                s.track_id);
            }
        std::sort(at.begin(), at.end());
        std::vector<std::uint32_t> ids;
        for (const auto& [_, id] : at) ids.push_back(id);
        return ids;
    };
    const auto order_a = order_of(0);
    const auto order_b = order_of(1);

    std::vector<Vec3> prev_pos;
    for (const ActorState& s : world.actors()) prev_pos.push_back(world.actor_position(s));
    std::vector<double> prev_arc;
    for (const ActorState& s : world.actors()) prev_arc.push_back(s.arc_position);

    const double dt = 0.1;
    bool order_held = true;
    bool gating_held = true;
    bool continuity_held = true;

    for (int step = 0; step < 10000; ++step) {
        const double t_before = world.time();
        world.step(dt);

        if (world.actors().size() != actor_count) {
            EXPECT(world.actors().size() == actor_count);
            return false;
        }

        for (std::size_t i = 0; i < world.actors().size(); ++i) {
            const ActorState& s = world.actors()[i];
            // wraparound continuity
            const Vec3 pos = world.actor_position(s);
            if ((pos - prev_pos[i]).norm() > s.speed * dt + 1e-6) continuity_held = false;
            prev_pos[i] = pos;

            // signal gating: nobody crosses the stop node while it is red
            if (s.path_index == 0 && signal_phase(sig, t_before) == Phase::Red) {
                const double before = gap(prev_arc[i], sig.arc_position, len_a);
                const double advance = gap(prev_arc[i], s.arc_position, len_a);
                if (before > 1e-12 && advance >= before) gating_held = false;
            }
            prev_arc[i] = s.arc_position;
        }

        if (step % 50 == 0) {
            if (order_of(0) != order_a || order_of(1) != order_b) order_held = false;
        }
    }
    EXPECT(order_held);
    EXPECT(gating_held);
    EXPECT(continuity_held);
    EXPECT(order_of(0) == order_a);
    EXPECT(order_of(1) == order_b);
    return ok;
}

struct Criterion {
    int id;
    const char* name;
    bool (*check)();
};

const Criterion kCriteria[] = {
    {1, "metric oracle equivalence", criterion_metric_oracles},
    {2, "directional reproduction (DT beats arbitrary on all metrics)",
     criterion_directional_reproduction},
    {3, "aggregate arithmetic on reference means", criterion_aggregate_arithmetic},
    {4, "sensor noise/dropout statistics", criterion_sensor_statistics},
    {5, "label completeness for out-of-range actors", criterion_label_completeness},
    {6, "dataset round trip, 100 frames", criterion_round_trip},
    {7, "end-to-end determinism", criterion_determinism},
    {8, "scenario invariants over 10^4 steps", criterion_scenario_invariants},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        bool passed = false;
        try {
            passed = c.check();
        } catch (const std::exception& e) {
            std::printf("       exception: %s\n", e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s (%.1fs)\n", passed ? "PASS" : "FAIL", c.id, c.name,
                    secs);
        if (!passed) ++failures;
    }
    return failures;
}
