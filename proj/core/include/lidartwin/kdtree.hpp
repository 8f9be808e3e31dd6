#pragma once

#include <cstdint>
#include <vector>

#include "lidartwin/vec3.hpp"

namespace lidartwin {

// 3-d k-d tree with exact backtracking nearest-neighbour queries. No
// approximation: results match the brute-force minimum exactly.
class KdTree3 {
public:
    explicit KdTree3(const std::vector<Vec3>& points);

    // Squared distance to the nearest stored point. Points must be non-empty.
    double nearest_sq(const Vec3& query) const;
    double nearest(const Vec3& query) const { return std::sqrt(nearest_sq(query)); }

    std::size_t size() const { return points_.size(); }

private:
    struct Node {
        std::uint32_t begin, end;  // leaf range in index_
        std::uint32_t left = 0;    // child nodes, 0 = leaf
        std::uint32_t right = 0;
        int axis = 0;
        double split = 0.0;
    };

    static constexpr std::uint32_t kLeafSize = 16;

    std::uint32_t build(std::uint32_t begin, std::uint32_t end);
    void search(std::uint32_t node, const Vec3& query, double& best_sq) const;

    std::vector<Vec3> points_;
    std::vector<std::uint32_t> index_;
    std::vector<Node> nodes_;
    std::uint32_t root_ = 0;
};

}  // namespace lidartwin
