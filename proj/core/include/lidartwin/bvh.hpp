#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lidartwin/mesh.hpp"
#include "lidartwin/vec3.hpp"

namespace lidartwin {

struct Ray {
    Vec3 origin;
    Vec3 direction;  // unit length
    double t_max = std::numeric_limits<double>::infinity();
};

struct Hit {
    double t = 0.0;               // meters along the ray
    Vec3 point;                   // origin + t * direction
    std::uint32_t triangle_index = 0;
    std::uint32_t object_id = 0;  // 0 = static scene
};

// Binary BVH over triangle ranges. Median split on the longest axis of the
// centroid bounds, leaves hold at most kLeafSize triangles. Construction is
// deterministic for a given mesh.
class Bvh {
public:
    static constexpr std::uint32_t kLeafSize = 8;

    struct Node {
        Aabb box;
        std::uint32_t left = 0;   // child index, or first triangle slot for leaves
        std::uint32_t count = 0;  // 0 for inner nodes, triangle count for leaves
        bool is_leaf() const { return count > 0; }
    };

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<std::uint32_t>& triangle_order() const { return order_; }
    bool empty() const { return nodes_.empty(); }

    friend Bvh build_bvh(const TriangleMesh& mesh);

private:
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> order_;  // triangle indices, leaf ranges are contiguous
};

// Throws Error(EmptyMesh) for an empty mesh.
Bvh build_bvh(const TriangleMesh& mesh);

// Moeller-Trumbore, two-sided, determinant epsilon 1e-9. Returns the
// intersection parameter t in (eps, t_max] or nothing.
std::optional<double> ray_triangle_intersect(const Ray& ray, const Vec3& a, const Vec3& b,
                                             const Vec3& c);

// Nearest hit within ray.t_max, or nothing. object_id is left at 0.
std::optional<Hit> intersect(const Ray& ray, const Bvh& bvh, const TriangleMesh& mesh);

// Exact squared distance from p to the closed triangle (a, b, c).
double point_to_triangle_distance_sq(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

// Exact Euclidean distance to the closest point on the closed triangle.
// Throws Error(DegenerateTriangle) when the triangle has near-zero area.
double point_to_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

// Min over all triangles, BVH-pruned; equals the brute-force minimum exactly.
// Throws Error(EmptyMesh) for an empty mesh.
double point_to_mesh_distance(const Vec3& p, const Bvh& bvh, const TriangleMesh& mesh);

// Unit normal of triangle tri (orientation as stored).
Vec3 triangle_normal(const TriangleMesh& mesh, std::uint32_t tri);

}  // namespace lidartwin
