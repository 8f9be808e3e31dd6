#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lidartwin/sensor.hpp"

namespace lidartwin {

// One oriented box per live actor, sensor frame, float32 export precision.
// Present even when no point landed on the actor (num_points == 0).
struct Box3D {
    float cx = 0.0f, cy = 0.0f, cz = 0.0f;  // center, sensor frame, meters
    float dx = 0.0f, dy = 0.0f, dz = 0.0f;  // extents, meters
    float yaw = 0.0f;                        // radians about sensor +z
    std::string class_name;
    std::uint32_t track_id = 0;
    std::uint32_t num_points = 0;
};

struct LabeledPoint {
    float x = 0.0f, y = 0.0f, z = 0.0f;  // sensor frame
    float intensity = 0.0f;
};

// Export product of one frame: sensor-frame points plus the four label
// channels. Doubles narrow to float32 here and nowhere earlier.
struct LabeledFrame {
    std::uint64_t frame_index = 0;
    std::vector<LabeledPoint> points;
    std::vector<std::uint32_t> semantic;  // per point
    std::vector<std::uint32_t> instance;  // per point, 0 = static scene
    std::vector<Box3D> boxes;

    bool consistent() const {
        return points.size() == semantic.size() && points.size() == instance.size();
    }
};

// World -> sensor transform of points and actor boxes; semantic/instance ids
// from hit provenance; one box per live actor with num_points counted by
// instance id. Throws Error(SnapshotMismatch) when the raw frame and the
// snapshot are from different frame indices.
LabeledFrame label_frame(const RawFrame& raw, const SceneSnapshot& snapshot,
                         const SensorPose& pose);

}  // namespace lidartwin
