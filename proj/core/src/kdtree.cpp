#include "lidartwin/kdtree.hpp"

#include <algorithm>
#include <numeric>

#include "lidartwin/errors.hpp"

namespace lidartwin {

KdTree3::KdTree3(const std::vector<Vec3>& points) : points_(points) {
    if (points_.empty()) throw Error(ErrorCode::EmptyCloud, "k-d tree over an empty point set");
    index_.resize(points_.size());
    std::iota(index_.begin(), index_.end(), 0u);
    nodes_.reserve(2 * points_.size() / kLeafSize + 2);
    root_ = build(0, static_cast<std::uint32_t>(points_.size()));
}

std::uint32_t KdTree3::build(std::uint32_t begin, std::uint32_t end) {
    Node node;
    node.begin = begin;
    node.end = end;

    if (end - begin > kLeafSize) {
        Aabb box;
        for (std::uint32_t i = begin; i < end; ++i) box.extend(points_[index_[i]]);
        const int axis = box.longest_axis();
        const std::uint32_t mid = begin + (end - begin) / 2;
        std::nth_element(index_.begin() + begin, index_.begin() + mid, index_.begin() + end,
                         [&](std::uint32_t l, std::uint32_t r) {
                             if (points_[l][axis] != points_[r][axis])
                                 return points_[l][axis] < points_[r][axis];
                             return l < r;
                         });
        node.axis = axis;
        node.split = points_[index_[mid]][axis];
        node.left = build(begin, mid);
        node.right = build(mid, end);
    }

    nodes_.push_back(node);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
}

void KdTree3::search(std::uint32_t node_id, const Vec3& query, double& best_sq) const {
    // Children are emitted before their parent, so a right-child id of 0 can
    // only mean "leaf" (node 0 is always the first, deepest leaf).
    const Node& node = nodes_[node_id];
    if (node.left == 0 && node.right == 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            const double d = (points_[index_[i]] - query).norm_sq();
            if (d < best_sq) best_sq = d;
        }
        return;
    }

    const double delta = query[node.axis] - node.split;
    const std::uint32_t near = delta < 0.0 ? node.left : node.right;
    const std::uint32_t far = delta < 0.0 ? node.right : node.left;
    search(near, query, best_sq);
    if (delta * delta < best_sq) search(far, query, best_sq);
}

double KdTree3::nearest_sq(const Vec3& query) const {
    double best_sq = std::numeric_limits<double>::infinity();
    search(root_, query, best_sq);
    return best_sq;
}

}  // namespace lidartwin
