#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lidartwin/bvh.hpp"
#include "lidartwin/mesh.hpp"
#include "lidartwin/vec3.hpp"

namespace lidartwin {

// Simulator length units to meters (100 units = 1 m).
inline constexpr double units_to_meters(double v) { return v / 100.0; }

struct SensorSpec {
    std::uint32_t channels = 1;
    double horizontal_resolution = 1.0;  // degrees per azimuth step
    double h_fov_start = 0.0;            // degrees
    double h_fov_end = 360.0;            // degrees, exclusive
    double v_fov_min = 0.0;              // degrees
    double v_fov_max = 0.0;              // degrees
    double range_max = 100.0;            // meters
    double point_rate = 0.0;             // points/second; 0 = derive minimum consistent
    double rotation_rate = 10.0;         // rotations/second
    double noise_sigma = 0.0;            // meters
    double dropout_prob = 0.0;

    std::uint32_t azimuth_steps() const;
    std::uint32_t rays_per_frame() const { return channels * azimuth_steps(); }

    // Throws Error(SpecInconsistent) if any invariant fails, including the
    // rate bound channels * azimuth_steps * rotation_rate <= point_rate.
    void validate() const;
};

struct SensorPose {
    Vec3 position;      // world, meters
    double yaw = 0.0;   // degrees; intrinsic yaw -> pitch -> roll, z-up
    double pitch = 0.0;
    double roll = 0.0;

    Mat3 rotation() const { return rotation_from_ypr_deg(yaw, pitch, roll); }
    Vec3 to_world(const Vec3& sensor_frame) const { return rotation() * sensor_frame + position; }
    Vec3 to_sensor(const Vec3& world) const { return rotation().apply_inverse(world - position); }
};

// Deterministic realization of a SensorSpec: one (azimuth, elevation) pair
// per ray, azimuth-major then channel. Elevations span v_fov inclusive of
// both endpoints (a single channel sits at v_fov_min).
struct ScanPattern {
    struct Beam {
        double azimuth_deg;
        double elevation_deg;
        Vec3 direction;  // unit, sensor frame
    };
    std::vector<Beam> beams;

    std::size_t size() const { return beams.size(); }
};

ScanPattern build_scan_pattern(const SensorSpec& spec);

// One traffic actor frozen at a frame boundary, ready for ray queries.
// The local mesh is an axis box spanning z in [0, dims.z] so `position` is
// the box base center on the path.
struct ActorInstance {
    std::uint32_t track_id = 0;
    std::uint32_t semantic_tag = 0;
    std::string class_name;
    Vec3 position;
    double heading_rad = 0.0;  // about +z
    Vec3 dims;                 // dx forward, dy lateral, dz up
    const TriangleMesh* mesh = nullptr;
    const Bvh* bvh = nullptr;
    Aabb world_bounds;

    Vec3 box_center_world() const { return position + Vec3{0.0, 0.0, dims.z * 0.5}; }
};

struct SceneSnapshot {
    const TriangleMesh* static_mesh = nullptr;  // may be null (actors only)
    const Bvh* static_bvh = nullptr;
    std::vector<ActorInstance> actors;
    std::uint64_t frame_index = 0;
    double time = 0.0;
};

struct RawReturn {
    Vec3 position;              // world frame, noise applied
    float intensity = 0.0f;     // cos(theta) * (1 - r/range_max), clamped to [0,1]
    std::uint32_t semantic_tag = 0;
    std::uint32_t object_id = 0;  // 0 = static scene, else actor track id
    std::uint32_t ray_index = 0;
};

struct RawFrame {
    std::uint64_t frame_index = 0;
    double time = 0.0;
    std::uint32_t ray_count = 0;  // pattern size, for bookkeeping
    SensorPose pose;
    std::vector<RawReturn> returns;
};

// Casts every pattern beam from `pose` against the snapshot. Surviving hits
// get Gaussian range noise and Bernoulli dropout from a counter-based stream
// keyed on (seed, frame_index, ray index), so results are reproducible and
// independent of parallel scheduling.
RawFrame scan_frame(const ScanPattern& pattern, const SensorSpec& spec, const SensorPose& pose,
                    const SceneSnapshot& snapshot, std::uint64_t seed);

// Convenience overload that builds the pattern on the fly.
RawFrame scan_frame(const SensorSpec& spec, const SensorPose& pose, const SceneSnapshot& snapshot,
                    std::uint64_t seed);

// 12-triangle axis box: x in [-dx/2, dx/2], y in [-dy/2, dy/2], z in [0, dz].
TriangleMesh make_box_mesh(const Vec3& dims, std::uint32_t semantic_tag = 0);

}  // namespace lidartwin
