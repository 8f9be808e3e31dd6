#include "lidartwin/labels.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "lidartwin/errors.hpp"

namespace lidartwin {

LabeledFrame label_frame(const RawFrame& raw, const SceneSnapshot& snapshot,
                         const SensorPose& pose) {
    if (raw.frame_index != snapshot.frame_index) {
        std::ostringstream os;
        os << "raw frame " << raw.frame_index << " labeled against snapshot "
           << snapshot.frame_index;
        throw Error(ErrorCode::SnapshotMismatch, os.str());
    }

    LabeledFrame out;
    out.frame_index = raw.frame_index;
    out.points.reserve(raw.returns.size());
    out.semantic.reserve(raw.returns.size());
    out.instance.reserve(raw.returns.size());

    std::map<std::uint32_t, std::uint32_t> points_per_actor;
    const Mat3 rot = pose.rotation();

    for (const RawReturn& r : raw.returns) {
        const Vec3 p = rot.apply_inverse(r.position - pose.position);
        out.points.push_back({static_cast<float>(p.x), static_cast<float>(p.y),
                              static_cast<float>(p.z), r.intensity});
        out.semantic.push_back(r.semantic_tag);
        out.instance.push_back(r.object_id);
        if (r.object_id != 0) ++points_per_actor[r.object_id];
    }

    out.boxes.reserve(snapshot.actors.size());
    for (const ActorInstance& actor : snapshot.actors) {
        const Vec3 center = rot.apply_inverse(actor.box_center_world() - pose.position);
        const Vec3 heading_world{std::cos(actor.heading_rad), std::sin(actor.heading_rad), 0.0};
        const Vec3 heading_sensor = rot.apply_inverse(heading_world);

        Box3D box;
        box.cx = static_cast<float>(center.x);
        box.cy = static_cast<float>(center.y);
        box.cz = static_cast<float>(center.z);
        box.dx = static_cast<float>(actor.dims.x);
        box.dy = static_cast<float>(actor.dims.y);
        box.dz = static_cast<float>(actor.dims.z);
        box.yaw = static_cast<float>(std::atan2(heading_sensor.y, heading_sensor.x));
        box.class_name = actor.class_name;
        box.track_id = actor.track_id;
        const auto it = points_per_actor.find(actor.track_id);
        box.num_points = it == points_per_actor.end() ? 0 : it->second;
        out.boxes.push_back(std::move(box));
    }
    return out;
}

}  // namespace lidartwin
