#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lidartwin/bvh.hpp"
#include "lidartwin/mesh.hpp"
#include "lidartwin/vec3.hpp"

namespace lidartwin {

struct PointCloud {
    std::vector<Vec3> points;
    std::optional<std::uint64_t> frame_id;

    bool empty() const { return points.empty(); }
};

// Sparse occupancy histogram over a shared voxel grid.
struct VoxelHistogram {
    Vec3 origin;
    double voxel_size = 0.5;
    std::map<std::array<std::int64_t, 3>, std::uint64_t> counts;
    std::uint64_t total = 0;

    void add(const Vec3& p) {
        const std::array<std::int64_t, 3> cell{
            static_cast<std::int64_t>(std::floor((p.x - origin.x) / voxel_size)),
            static_cast<std::int64_t>(std::floor((p.y - origin.y) / voxel_size)),
            static_cast<std::int64_t>(std::floor((p.z - origin.z) / voxel_size))};
        ++counts[cell];
        ++total;
    }
};

struct HausdorffResult {
    double p95 = 0.0;  // nearest-rank P95 of the pooled bidirectional multiset
    double max = 0.0;  // raw Hausdorff, reported only on request
};

// Pooled bidirectional nearest-neighbour distances; P95 by nearest rank
// (sorted value at index ceil(0.95 n), 1-based). Throws EmptyCloud.
HausdorffResult hausdorff_bidirectional(const PointCloud& a, const PointCloud& b);
double hausdorff_p95(const PointCloud& a, const PointCloud& b);

// Jensen-Shannon divergence (log base 2, in [0, 1]) between voxel-occupancy
// distributions on a grid anchored at the componentwise floor of the union
// bounding-box minimum. Throws EmptyCloud.
double js_divergence(const PointCloud& a, const PointCloud& b, double voxel_size);

// Mean point-to-mesh distance; optionally keeps every distance for
// histogramming. Throws EmptyCloud / EmptyMesh.
double p2m_mean(const PointCloud& cloud, const Bvh& bvh, const TriangleMesh& mesh,
                std::vector<double>* distances = nullptr);

// Nearest-rank p-th percentile of an unsorted sample (copies + sorts).
double percentile_nearest_rank(std::vector<double> values, double p);

}  // namespace lidartwin
