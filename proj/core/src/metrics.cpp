#include "lidartwin/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "lidartwin/errors.hpp"
#include "lidartwin/kdtree.hpp"
#include "lidartwin/parallel.hpp"

namespace lidartwin {

namespace {

void require_non_empty(const PointCloud& c, const char* which) {
    if (c.empty()) throw Error(ErrorCode::EmptyCloud, std::string(which) + " cloud is empty");
}

// Directed nearest-neighbour distances from every point of `from` into `to`.
std::vector<double> directed_nn(const PointCloud& from, const KdTree3& to) {
    std::vector<double> out(from.points.size());
    parallel_for(from.points.size(),
                 [&](std::size_t i) { out[i] = to.nearest(from.points[i]); });
    return out;
}

}  // namespace

double percentile_nearest_rank(std::vector<double> values, double p) {
    if (values.empty()) throw Error(ErrorCode::EmptyCloud, "percentile of an empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    if (rank < 1) rank = 1;
    if (rank > n) rank = n;
    return values[rank - 1];
}

HausdorffResult hausdorff_bidirectional(const PointCloud& a, const PointCloud& b) {
    require_non_empty(a, "first");
    require_non_empty(b, "second");

    const KdTree3 tree_a(a.points);
    const KdTree3 tree_b(b.points);
    std::vector<double> pooled = directed_nn(a, tree_b);
    const std::vector<double> d_ba = directed_nn(b, tree_a);
    pooled.insert(pooled.end(), d_ba.begin(), d_ba.end());

    HausdorffResult r;
    r.max = *std::max_element(pooled.begin(), pooled.end());
    r.p95 = percentile_nearest_rank(std::move(pooled), 0.95);
    return r;
}

double hausdorff_p95(const PointCloud& a, const PointCloud& b) {
    return hausdorff_bidirectional(a, b).p95;
}

double js_divergence(const PointCloud& a, const PointCloud& b, double voxel_size) {
    require_non_empty(a, "first");
    require_non_empty(b, "second");
    if (!(voxel_size > 0.0))
        throw Error(ErrorCode::ConfigInvalid, "voxel size must be positive");

    Aabb box;
    for (const Vec3& p : a.points) box.extend(p);
    for (const Vec3& p : b.points) box.extend(p);
    const Vec3 anchor{std::floor(box.min.x), std::floor(box.min.y), std::floor(box.min.z)};

    VoxelHistogram ha, hb;
    ha.origin = hb.origin = anchor;
    ha.voxel_size = hb.voxel_size = voxel_size;
    for (const Vec3& p : a.points) ha.add(p);
    for (const Vec3& p : b.points) hb.add(p);

    // JSD = 1/2 KL(P||M) + 1/2 KL(Q||M), M = (P+Q)/2, log base 2, 0 log 0 = 0.
    // Iterating the union of supports in cell order keeps the sum
    // deterministic.
    const double na = static_cast<double>(ha.total);
    const double nb = static_cast<double>(hb.total);
    double jsd = 0.0;
    auto ia = ha.counts.begin();
    auto ib = hb.counts.begin();
    while (ia != ha.counts.end() || ib != hb.counts.end()) {
        double p = 0.0, q = 0.0;
        if (ib == hb.counts.end() || (ia != ha.counts.end() && ia->first < ib->first)) {
            p = static_cast<double>(ia->second) / na;
            ++ia;
        } else if (ia == ha.counts.end() || ib->first < ia->first) {
            q = static_cast<double>(ib->second) / nb;
            ++ib;
        } else {
            p = static_cast<double>(ia->second) / na;
            q = static_cast<double>(ib->second) / nb;
            ++ia;
            ++ib;
        }
        const double m = 0.5 * (p + q);
        // Accumulate the two sides smaller-first; swapping A and B then
        // replays the identical float operations, keeping symmetry exact.
        double u = p > 0.0 ? 0.5 * p * std::log2(p / m) : 0.0;
        double v = q > 0.0 ? 0.5 * q * std::log2(q / m) : 0.0;
        if (v < u) std::swap(u, v);
        jsd += u;
        jsd += v;
    }
    // Exact identical histograms sum to exactly 0; clamp rounding residue.
    return std::clamp(jsd, 0.0, 1.0);
}

double p2m_mean(const PointCloud& cloud, const Bvh& bvh, const TriangleMesh& mesh,
                std::vector<double>* distances) {
    require_non_empty(cloud, "query");
    if (mesh.empty()) throw Error(ErrorCode::EmptyMesh, "point-to-mesh against empty mesh");

    std::vector<double> d(cloud.points.size());
    parallel_for(cloud.points.size(),
                 [&](std::size_t i) { d[i] = point_to_mesh_distance(cloud.points[i], bvh, mesh); });

    double sum = 0.0;
    for (const double v : d) sum += v;
    const double mean = sum / static_cast<double>(d.size());
    if (distances) *distances = std::move(d);
    return mean;
}

}  // namespace lidartwin
