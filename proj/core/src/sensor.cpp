#include "lidartwin/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lidartwin/errors.hpp"
#include "lidartwin/parallel.hpp"
#include "lidartwin/rng.hpp"

namespace lidartwin {

namespace {

[[noreturn]] void spec_fail(const std::string& why) {
    throw Error(ErrorCode::SpecInconsistent, why);
}

// Entry/exit of ray against box within [0, t_limit].
bool ray_hits_box(const Ray& ray, const Aabb& box, double t_limit) {
    double t0 = 0.0;
    double t1 = t_limit;
    for (int a = 0; a < 3; ++a) {
        const double inv = 1.0 / ray.direction[a];
        double near = (box.min[a] - ray.origin[a]) * inv;
        double far = (box.max[a] - ray.origin[a]) * inv;
        if (inv < 0.0) std::swap(near, far);
        t0 = near > t0 ? near : t0;
        t1 = far < t1 ? far : t1;
        if (t1 < t0) return false;
    }
    return true;
}

}  // namespace

std::uint32_t SensorSpec::azimuth_steps() const {
    const double span = h_fov_end - h_fov_start;
    // Small forgiveness so spans like 360/0.2 land on the intended count.
    return static_cast<std::uint32_t>(std::floor(span / horizontal_resolution + 1e-6));
}

void SensorSpec::validate() const {
    if (channels < 1) spec_fail("channels must be >= 1");
    if (!(horizontal_resolution > 0.0) || horizontal_resolution > 360.0)
        spec_fail("horizontal_resolution must be in (0, 360]");
    const double span = h_fov_end - h_fov_start;
    if (!(span > 0.0) || span > 360.0) spec_fail("h_fov span must be in (0, 360]");
    if (v_fov_min > v_fov_max) spec_fail("v_fov min must not exceed max");
    if (!std::isfinite(v_fov_min) || !std::isfinite(v_fov_max)) spec_fail("v_fov must be finite");
    if (!(range_max > 0.0)) spec_fail("range_max must be positive");
    if (!(dropout_prob >= 0.0 && dropout_prob < 1.0)) spec_fail("dropout_prob must be in [0,1)");
    if (noise_sigma < 0.0) spec_fail("noise_sigma must be non-negative");
    if (!(rotation_rate > 0.0)) spec_fail("rotation_rate must be positive");
    if (azimuth_steps() == 0) spec_fail("h_fov span shorter than one azimuth step");

    if (point_rate > 0.0) {
        const double required =
            static_cast<double>(channels) * azimuth_steps() * rotation_rate;
        if (required > point_rate) {
            std::ostringstream os;
            os << "point_rate " << point_rate << " cannot sustain " << required
               << " points/second (channels x azimuth steps x rotation_rate)";
            spec_fail(os.str());
        }
    }
}

ScanPattern build_scan_pattern(const SensorSpec& spec) {
    spec.validate();

    const std::uint32_t steps = spec.azimuth_steps();
    ScanPattern pattern;
    pattern.beams.reserve(static_cast<std::size_t>(steps) * spec.channels);

    std::vector<double> elevations(spec.channels);
    for (std::uint32_t c = 0; c < spec.channels; ++c)
        elevations[c] = spec.channels == 1
                            ? spec.v_fov_min
                            : spec.v_fov_min + (spec.v_fov_max - spec.v_fov_min) *
                                                   static_cast<double>(c) / (spec.channels - 1);

    for (std::uint32_t a = 0; a < steps; ++a) {
        const double az = spec.h_fov_start + a * spec.horizontal_resolution;
        const double az_rad = deg_to_rad(az);
        for (std::uint32_t c = 0; c < spec.channels; ++c) {
            const double el_rad = deg_to_rad(elevations[c]);
            ScanPattern::Beam beam;
            beam.azimuth_deg = az;
            beam.elevation_deg = elevations[c];
            beam.direction = {std::cos(el_rad) * std::cos(az_rad),
                              std::cos(el_rad) * std::sin(az_rad), std::sin(el_rad)};
            pattern.beams.push_back(beam);
        }
    }
    return pattern;
}

RawFrame scan_frame(const ScanPattern& pattern, const SensorSpec& spec, const SensorPose& pose,
                    const SceneSnapshot& snapshot, std::uint64_t seed) {
    const Mat3 rot = pose.rotation();
    const std::size_t n = pattern.size();

    struct Slot {
        bool live = false;
        RawReturn ret;
    };
    std::vector<Slot> slots(n);

    parallel_for(n, [&](std::size_t i) {
        Ray ray;
        ray.origin = pose.position;
        ray.direction = rot * pattern.beams[i].direction;
        ray.t_max = spec.range_max;

        double best_t = spec.range_max;
        bool have_hit = false;
        Vec3 normal;
        std::uint32_t semantic = 0;
        std::uint32_t object = 0;

        if (snapshot.static_bvh && snapshot.static_mesh && !snapshot.static_bvh->empty()) {
            if (auto hit = intersect(ray, *snapshot.static_bvh, *snapshot.static_mesh)) {
                best_t = hit->t;
                have_hit = true;
                normal = triangle_normal(*snapshot.static_mesh, hit->triangle_index);
                semantic = snapshot.static_mesh->semantic_tags[hit->triangle_index];
                object = 0;
            }
        }

        for (const ActorInstance& actor : snapshot.actors) {
            if (!ray_hits_box(ray, actor.world_bounds, best_t)) continue;
            const Mat3 local = Mat3::rot_z(-actor.heading_rad);
            Ray local_ray;
            local_ray.origin = local * (ray.origin - actor.position);
            local_ray.direction = local * ray.direction;
            local_ray.t_max = best_t;
            if (auto hit = intersect(local_ray, *actor.bvh, *actor.mesh)) {
                if (hit->t < best_t || !have_hit) {
                    best_t = hit->t;
                    have_hit = true;
                    normal = Mat3::rot_z(actor.heading_rad) *
                             triangle_normal(*actor.mesh, hit->triangle_index);
                    semantic = actor.semantic_tag;
                    object = actor.track_id;
                }
            }
        }

        if (!have_hit) return;

        // Fixed draw order per ray: noise first, then the dropout coin, so
        // toggling either knob never shifts the other's stream.
        CounterRng rng(seed, rng_stream::kSensorRay,
                       snapshot.frame_index * static_cast<std::uint64_t>(n) + i);
        const double noisy_t = best_t + rng.normal(spec.noise_sigma);
        if (rng.uniform01() < spec.dropout_prob) return;

        const double cos_theta = std::abs(ray.direction.dot(normal));
        const double intensity =
            std::clamp(cos_theta * (1.0 - best_t / spec.range_max), 0.0, 1.0);

        Slot& slot = slots[i];
        slot.live = true;
        slot.ret.position = ray.origin + ray.direction * noisy_t;
        slot.ret.intensity = static_cast<float>(intensity);
        slot.ret.semantic_tag = semantic;
        slot.ret.object_id = object;
        slot.ret.ray_index = static_cast<std::uint32_t>(i);
    });

    RawFrame frame;
    frame.frame_index = snapshot.frame_index;
    frame.time = snapshot.time;
    frame.ray_count = static_cast<std::uint32_t>(n);
    frame.pose = pose;
    frame.returns.reserve(n);
    for (const Slot& slot : slots)
        if (slot.live) frame.returns.push_back(slot.ret);
    return frame;
}

RawFrame scan_frame(const SensorSpec& spec, const SensorPose& pose, const SceneSnapshot& snapshot,
                    std::uint64_t seed) {
    return scan_frame(build_scan_pattern(spec), spec, pose, snapshot, seed);
}

TriangleMesh make_box_mesh(const Vec3& dims, std::uint32_t semantic_tag) {
    const double hx = dims.x * 0.5;
    const double hy = dims.y * 0.5;
    TriangleMesh box;
    box.vertices = {
        {-hx, -hy, 0.0}, {hx, -hy, 0.0}, {hx, hy, 0.0}, {-hx, hy, 0.0},
        {-hx, -hy, dims.z}, {hx, -hy, dims.z}, {hx, hy, dims.z}, {-hx, hy, dims.z},
    };
    box.triangles = {
        {0, 2, 1}, {0, 3, 2},  // bottom
        {4, 5, 6}, {4, 6, 7},  // top
        {0, 1, 5}, {0, 5, 4},  // -y
        {2, 3, 7}, {2, 7, 6},  // +y
        {1, 2, 6}, {1, 6, 5},  // +x
        {3, 0, 4}, {3, 4, 7},  // -x
    };
    box.semantic_tags.assign(box.triangles.size(), semantic_tag);
    return box;
}

}  // namespace lidartwin
