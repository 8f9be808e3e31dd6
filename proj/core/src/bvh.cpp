#include "lidartwin/bvh.hpp"

#include <algorithm>
#include <cmath>

namespace lidartwin {

namespace {

constexpr double kDetEpsilon = 1e-9;

Aabb triangle_bounds(const TriangleMesh& mesh, std::uint32_t tri) {
    Aabb b;
    b.extend(mesh.vertex(tri, 0));
    b.extend(mesh.vertex(tri, 1));
    b.extend(mesh.vertex(tri, 2));
    return b;
}

// Slab test against [0, t_limit]. Returns entry distance when the box is hit.
bool ray_box_intersect(const Ray& ray, const Vec3& inv_dir, const Aabb& box, double t_limit,
                       double& t_entry) {
    double t0 = 0.0;
    double t1 = t_limit;
    for (int a = 0; a < 3; ++a) {
        const double inv = inv_dir[a];
        double near = (box.min[a] - ray.origin[a]) * inv;
        double far = (box.max[a] - ray.origin[a]) * inv;
        if (inv < 0.0) std::swap(near, far);
        t0 = near > t0 ? near : t0;
        t1 = far < t1 ? far : t1;
        if (t1 < t0) return false;
    }
    t_entry = t0;
    return true;
}

}  // namespace

Bvh build_bvh(const TriangleMesh& mesh) {
    if (mesh.empty()) throw Error(ErrorCode::EmptyMesh, "cannot build BVH over an empty mesh");

    const std::uint32_t n = static_cast<std::uint32_t>(mesh.triangle_count());
    Bvh bvh;
    bvh.order_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) bvh.order_[i] = i;

    std::vector<Vec3> centroids(n);
    for (std::uint32_t i = 0; i < n; ++i) centroids[i] = mesh.centroid(i);

    struct Task {
        std::uint32_t node;
        std::uint32_t begin;
        std::uint32_t end;
    };

    bvh.nodes_.reserve(2 * n / Bvh::kLeafSize + 2);
    bvh.nodes_.emplace_back();
    std::vector<Task> stack{{0, 0, n}};

    while (!stack.empty()) {
        const Task task = stack.back();
        stack.pop_back();

        Aabb box;
        Aabb centroid_box;
        for (std::uint32_t i = task.begin; i < task.end; ++i) {
            box.extend(triangle_bounds(mesh, bvh.order_[i]));
            centroid_box.extend(centroids[bvh.order_[i]]);
        }
        bvh.nodes_[task.node].box = box;

        const std::uint32_t count = task.end - task.begin;
        if (count <= Bvh::kLeafSize) {
            bvh.nodes_[task.node].left = task.begin;
            bvh.nodes_[task.node].count = count;
            continue;
        }

        // Median split by rank: sort the range on the longest centroid axis
        // (ties broken by triangle index for determinism) and cut at n/2.
        const int axis = centroid_box.longest_axis();
        const std::uint32_t mid = task.begin + count / 2;
        std::nth_element(bvh.order_.begin() + task.begin, bvh.order_.begin() + mid,
                         bvh.order_.begin() + task.end,
                         [&](std::uint32_t lhs, std::uint32_t rhs) {
                             const double cl = centroids[lhs][axis];
                             const double cr = centroids[rhs][axis];
                             if (cl != cr) return cl < cr;
                             return lhs < rhs;
                         });

        const std::uint32_t left = static_cast<std::uint32_t>(bvh.nodes_.size());
        bvh.nodes_[task.node].left = left;
        bvh.nodes_[task.node].count = 0;
        bvh.nodes_.emplace_back();
        bvh.nodes_.emplace_back();
        stack.push_back({left + 1, mid, task.end});
        stack.push_back({left, task.begin, mid});
    }
    return bvh;
}

std::optional<double> ray_triangle_intersect(const Ray& ray, const Vec3& a, const Vec3& b,
                                             const Vec3& c) {
    const Vec3 e1 = b - a;
    const Vec3 e2 = c - a;
    const Vec3 pvec = ray.direction.cross(e2);
    const double det = e1.dot(pvec);
    if (std::abs(det) < kDetEpsilon) return std::nullopt;

    const double inv_det = 1.0 / det;
    const Vec3 tvec = ray.origin - a;
    const double u = tvec.dot(pvec) * inv_det;
    if (u < 0.0 || u > 1.0) return std::nullopt;

    const Vec3 qvec = tvec.cross(e1);
    const double v = ray.direction.dot(qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0) return std::nullopt;

    const double t = e2.dot(qvec) * inv_det;
    if (t <= kDetEpsilon || t > ray.t_max) return std::nullopt;
    return t;
}

std::optional<Hit> intersect(const Ray& ray, const Bvh& bvh, const TriangleMesh& mesh) {
    if (bvh.empty()) return std::nullopt;

    const Vec3 inv_dir{1.0 / ray.direction.x, 1.0 / ray.direction.y, 1.0 / ray.direction.z};
    double best_t = ray.t_max;
    std::int64_t best_tri = -1;

    std::uint32_t stack[64];
    int top = 0;
    stack[top++] = 0;

    while (top > 0) {
        const Bvh::Node& node = bvh.nodes()[stack[--top]];
        double t_entry;
        if (!ray_box_intersect(ray, inv_dir, node.box, best_t, t_entry)) continue;

        if (node.is_leaf()) {
            for (std::uint32_t i = node.left; i < node.left + node.count; ++i) {
                const std::uint32_t tri = bvh.triangle_order()[i];
                Ray clipped = ray;
                clipped.t_max = best_t;
                if (auto t = ray_triangle_intersect(clipped, mesh.vertex(tri, 0),
                                                    mesh.vertex(tri, 1), mesh.vertex(tri, 2))) {
                    // Strictly-closer wins; equal t resolved by smaller index so
                    // traversal order cannot change the result.
                    if (*t < best_t || (*t == best_t && static_cast<std::int64_t>(tri) < best_tri)) {
                        best_t = *t;
                        best_tri = tri;
                    }
                }
            }
        } else {
            stack[top++] = node.left;
            stack[top++] = node.left + 1;
        }
    }

    if (best_tri < 0) return std::nullopt;
    Hit hit;
    hit.t = best_t;
    hit.point = ray.origin + ray.direction * best_t;
    hit.triangle_index = static_cast<std::uint32_t>(best_tri);
    hit.object_id = 0;
    return hit;
}

// Closest-point on triangle via the standard region decomposition of the
// parameter plane (interior, three edges, three vertices).
double point_to_triangle_distance_sq(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 ap = p - a;

    const double d1 = ab.dot(ap);
    const double d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return ap.norm_sq();  // vertex a

    const Vec3 bp = p - b;
    const double d3 = ab.dot(bp);
    const double d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return bp.norm_sq();  // vertex b

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {  // edge ab
        const double v = d1 / (d1 - d3);
        return (ap - ab * v).norm_sq();
    }

    const Vec3 cp = p - c;
    const double d5 = ab.dot(cp);
    const double d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return cp.norm_sq();  // vertex c

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {  // edge ac
        const double w = d2 / (d2 - d6);
        return (ap - ac * w).norm_sq();
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {  // edge bc
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (bp - (c - b) * w).norm_sq();
    }

    // interior
    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom;
    const double w = vc * denom;
    return (ap - ab * v - ac * w).norm_sq();
}

double point_to_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    if (0.5 * (b - a).cross(c - a).norm() <= kMinTriangleArea)
        throw Error(ErrorCode::DegenerateTriangle, "point-to-triangle query on degenerate triangle");
    return std::sqrt(point_to_triangle_distance_sq(p, a, b, c));
}

double point_to_mesh_distance(const Vec3& p, const Bvh& bvh, const TriangleMesh& mesh) {
    if (mesh.empty() || bvh.empty())
        throw Error(ErrorCode::EmptyMesh, "point-to-mesh query on empty mesh");

    double best_sq = std::numeric_limits<double>::infinity();

    std::uint32_t stack[64];
    int top = 0;
    stack[top++] = 0;

    while (top > 0) {
        const Bvh::Node& node = bvh.nodes()[stack[--top]];
        if (node.box.distance_sq(p) > best_sq) continue;

        if (node.is_leaf()) {
            for (std::uint32_t i = node.left; i < node.left + node.count; ++i) {
                const std::uint32_t tri = bvh.triangle_order()[i];
                const double d = point_to_triangle_distance_sq(p, mesh.vertex(tri, 0),
                                                               mesh.vertex(tri, 1),
                                                               mesh.vertex(tri, 2));
                if (d < best_sq) best_sq = d;
            }
        } else {
            // Visit the nearer child first so pruning kicks in sooner.
            const double dl = bvh.nodes()[node.left].box.distance_sq(p);
            const double dr = bvh.nodes()[node.left + 1].box.distance_sq(p);
            if (dl <= dr) {
                stack[top++] = node.left + 1;
                stack[top++] = node.left;
            } else {
                stack[top++] = node.left;
                stack[top++] = node.left + 1;
            }
        }
    }
    return std::sqrt(best_sq);
}

Vec3 triangle_normal(const TriangleMesh& mesh, std::uint32_t tri) {
    const Vec3 a = mesh.vertex(tri, 0);
    return (mesh.vertex(tri, 1) - a).cross(mesh.vertex(tri, 2) - a).normalized();
}

}  // namespace lidartwin
