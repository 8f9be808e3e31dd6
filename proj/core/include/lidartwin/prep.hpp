#pragma once

#include <optional>

#include "lidartwin/mesh.hpp"

namespace lidartwin {

struct RoiBox {
    Vec3 min;
    Vec3 max;

    bool valid() const { return min.x < max.x && min.y < max.y && min.z < max.z; }
    bool contains(const Vec3& p) const {  // closed box
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
               p.z >= min.z && p.z <= max.z;
    }
};

struct PrepConfig {
    std::optional<RoiBox> roi;      // no crop when unset
    double scale = 1.0;             // unitless multiplier to meters
    double min_component_area = 1.0;  // m^2; components below are removed
};

struct PrepSummary {
    std::size_t triangles_before = 0;
    std::size_t triangles_after = 0;
    std::size_t components_removed = 0;
};

// Keeps exactly the triangles whose centroid lies inside the closed box.
// Unreferenced vertices are dropped, tags preserved, relative order kept.
// Throws Error(EmptyResult) when nothing survives.
TriangleMesh crop_to_roi(const TriangleMesh& mesh, const RoiBox& roi);

// Deletes connected components (edge adjacency: two triangles sharing a
// vertex-index pair) whose total area is below min_component_area. The
// largest component is always retained.
TriangleMesh remove_floating_components(const TriangleMesh& mesh, double min_component_area,
                                        std::size_t* components_removed = nullptr);

// Multiplies every vertex by scale. Throws Error(InvalidScale) for scale <= 0.
TriangleMesh rescale(const TriangleMesh& mesh, double scale);

// Full pipeline in real-world units: rescale first so the ROI and the area
// threshold are both interpreted in meters, then crop, then remove noise
// components.
TriangleMesh prep_mesh(const TriangleMesh& mesh, const PrepConfig& config,
                       PrepSummary* summary = nullptr);

}  // namespace lidartwin
