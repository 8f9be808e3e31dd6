#include "lidartwin/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "lidartwin/bvh.hpp"
#include "lidartwin/dataset_io.hpp"
#include "lidartwin/errors.hpp"
#include "lidartwin/labels.hpp"
#include "lidartwin/metrics.hpp"
#include "lidartwin/obj_io.hpp"
#include "lidartwin/prep.hpp"

namespace lidartwin {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Aabb actor_world_bounds(const ActorInstance& actor) {
    const double hx = actor.dims.x * 0.5;
    const double hy = actor.dims.y * 0.5;
    const Mat3 rot = Mat3::rot_z(actor.heading_rad);
    Aabb box;
    for (const double x : {-hx, hx})
        for (const double y : {-hy, hy})
            for (const double z : {0.0, actor.dims.z})
                box.extend(rot * Vec3{x, y, z} + actor.position);
    return box;
}

PointCloud cloud_in_world(const LabeledFrame& frame, const SensorPose& pose) {
    PointCloud cloud;
    cloud.frame_id = frame.frame_index;
    cloud.points.reserve(frame.points.size());
    const Mat3 rot = pose.rotation();
    for (const LabeledPoint& p : frame.points)
        cloud.points.push_back(rot * Vec3{p.x, p.y, p.z} + pose.position);
    return cloud;
}

}  // namespace

SimulateResult run_simulation(const SceneConfig& config, const std::string& out_dir,
                              const SimulateOptions& options) {
    SimulateResult result;
    result.frames = options.frames_override.value_or(config.frames);
    result.seed = options.seed_override.value_or(config.seed);

    // Actor classes claim their palette ids before the mesh can take them.
    SemanticPalette palette;
    for (const ActorCatalogEntry& entry : config.catalog)
        palette.assign(entry.class_name, entry.semantic_tag);

    const auto t_prep = Clock::now();
    TriangleMesh mesh = load_obj(config.mesh.path, palette);
    if (mesh.empty()) throw Error(ErrorCode::EmptyMesh, config.mesh.path + " has no triangles");
    mesh = prep_mesh(mesh, config.mesh.prep);
    mesh.validate();
    const Bvh static_bvh = build_bvh(mesh);
    StageTimings timings;
    timings.prep_s = seconds_since(t_prep);

    const auto t_sim = Clock::now();
    World world(config.paths, config.signals, config.catalog);
    if (!config.spawn_points.empty())
        world.spawn_actors(config.spawn_points, config.distribution, config.spawn_points.size(),
                           result.seed);
    for (std::size_t i = 0; i < options.warmup_steps; ++i) world.step(config.dt);

    // One box mesh + BVH per catalog class, shared by every actor instance.
    std::vector<std::pair<TriangleMesh, Bvh>> class_boxes;
    class_boxes.reserve(config.catalog.size());
    for (const ActorCatalogEntry& entry : config.catalog) {
        TriangleMesh box = make_box_mesh(entry.dims, entry.semantic_tag);
        Bvh bvh = build_bvh(box);
        class_boxes.emplace_back(std::move(box), std::move(bvh));
    }

    std::vector<ScanPattern> patterns;
    patterns.reserve(config.sensors.size());
    for (const SensorConfig& sensor : config.sensors)
        patterns.push_back(build_scan_pattern(sensor.spec));

    std::vector<std::vector<LabeledFrame>> per_sensor_frames(config.sensors.size());

    for (std::uint64_t f = 0; f < result.frames; ++f) {
        SceneSnapshot snapshot;
        snapshot.static_mesh = &mesh;
        snapshot.static_bvh = &static_bvh;
        snapshot.frame_index = f;
        snapshot.time = world.time();
        snapshot.actors.reserve(world.actors().size());
        for (const ActorState& a : world.actors()) {
            const ActorCatalogEntry& entry = world.catalog()[a.catalog_index];
            ActorInstance inst;
            inst.track_id = a.track_id;
            inst.semantic_tag = entry.semantic_tag;
            inst.class_name = entry.class_name;
            inst.position = world.actor_position(a);
            inst.heading_rad = world.actor_heading(a);
            inst.dims = entry.dims;
            inst.mesh = &class_boxes[a.catalog_index].first;
            inst.bvh = &class_boxes[a.catalog_index].second;
            inst.world_bounds = actor_world_bounds(inst);
            snapshot.actors.push_back(std::move(inst));
        }

        for (std::size_t s = 0; s < config.sensors.size(); ++s) {
            const SensorConfig& sensor = config.sensors[s];
            const RawFrame raw =
                scan_frame(patterns[s], sensor.spec, sensor.pose, snapshot, result.seed);
            per_sensor_frames[s].push_back(label_frame(raw, snapshot, sensor.pose));
        }
        world.step(config.dt);
    }
    timings.simulate_s = seconds_since(t_sim);

    const auto t_write = Clock::now();
    if (result.frames > 0) {
        for (std::size_t s = 0; s < config.sensors.size(); ++s) {
            const SensorConfig& sensor = config.sensors[s];
            const std::string dir = config.sensors.size() == 1
                                        ? out_dir
                                        : (fs::path(out_dir) / sensor.name).string();
            write_dataset(per_sensor_frames[s], dir, palette.names(), sensor.name, sensor.spec,
                          sensor.pose);
            result.dataset_dirs.push_back(dir);
        }
    }
    timings.write_s = seconds_since(t_write);
    result.timings = timings;
    return result;
}

DatasetEval run_evaluate(const EvaluateOptions& options) {
    DatasetEval eval;
    eval.candidate = options.candidate_dir;
    eval.reference = options.reference;
    eval.voxel_size = options.voxel_size;

    DatasetManifest cand_manifest;
    const std::vector<LabeledFrame> cand_frames =
        read_dataset(options.candidate_dir, &cand_manifest);

    const bool reference_is_mesh =
        fs::is_regular_file(options.reference) && fs::path(options.reference).extension() == ".obj";

    std::optional<TriangleMesh> surface;
    std::optional<Bvh> surface_bvh;
    auto load_surface = [&](const std::string& path) {
        SemanticPalette palette;
        surface = load_obj(path, palette);
        if (surface->empty()) throw Error(ErrorCode::EmptyMesh, path + " has no triangles");
        surface_bvh = build_bvh(*surface);
    };

    std::vector<PointCloud> cand_clouds;
    for (const LabeledFrame& f : cand_frames)
        cand_clouds.push_back(cloud_in_world(f, cand_manifest.pose));

    if (reference_is_mesh) {
        load_surface(options.reference);
        for (std::size_t i = 0; i < cand_clouds.size(); ++i) {
            if (cand_clouds[i].empty()) continue;
            PairMetrics pm;
            pm.frame = cand_frames[i].frame_index;
            std::vector<double> distances;
            pm.p2m_mean = p2m_mean(cand_clouds[i], *surface_bvh, *surface, &distances);
            eval.p2m_distances.insert(eval.p2m_distances.end(), distances.begin(),
                                      distances.end());
            eval.pairs.push_back(std::move(pm));
        }
    } else {
        DatasetManifest ref_manifest;
        const std::vector<LabeledFrame> ref_frames =
            read_dataset(options.reference, &ref_manifest);
        std::vector<PointCloud> ref_clouds;
        for (const LabeledFrame& f : ref_frames)
            ref_clouds.push_back(cloud_in_world(f, ref_manifest.pose));

        if (options.reference_mesh) load_surface(*options.reference_mesh);

        const std::size_t n = std::min(cand_clouds.size(), ref_clouds.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (cand_clouds[i].empty() || ref_clouds[i].empty()) continue;
            PairMetrics pm;
            pm.frame = cand_frames[i].frame_index;
            const HausdorffResult h = hausdorff_bidirectional(cand_clouds[i], ref_clouds[i]);
            pm.hausdorff_p95 = h.p95;
            if (options.verbose) pm.hausdorff_max = h.max;
            pm.jsd = js_divergence(cand_clouds[i], ref_clouds[i], options.voxel_size);
            if (surface_bvh) {
                std::vector<double> distances;
                pm.p2m_mean = p2m_mean(cand_clouds[i], *surface_bvh, *surface, &distances);
                eval.p2m_distances.insert(eval.p2m_distances.end(), distances.begin(),
                                          distances.end());
            }
            eval.pairs.push_back(std::move(pm));
        }
    }

    eval.compute_means();
    return eval;
}

}  // namespace lidartwin
