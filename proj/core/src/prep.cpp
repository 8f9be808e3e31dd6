#include "lidartwin/prep.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>

#include "lidartwin/errors.hpp"

namespace lidartwin {

namespace {

// Rebuilds a mesh from the subset of triangles flagged keep, dropping
// unreferenced vertices. Triangle and vertex relative order is preserved.
TriangleMesh subset_mesh(const TriangleMesh& mesh, const std::vector<char>& keep) {
    TriangleMesh out;
    std::vector<std::uint32_t> remap(mesh.vertices.size(),
                                     std::numeric_limits<std::uint32_t>::max());
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        if (!keep[t]) continue;
        std::array<std::uint32_t, 3> tri{};
        for (int c = 0; c < 3; ++c) {
            const std::uint32_t old = mesh.triangles[t][c];
            if (remap[old] == std::numeric_limits<std::uint32_t>::max()) {
                remap[old] = static_cast<std::uint32_t>(out.vertices.size());
                out.vertices.push_back(mesh.vertices[old]);
            }
            tri[c] = remap[old];
        }
        out.triangles.push_back(tri);
        out.semantic_tags.push_back(mesh.semantic_tags[t]);
    }
    return out;
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

}  // namespace

TriangleMesh crop_to_roi(const TriangleMesh& mesh, const RoiBox& roi) {
    std::vector<char> keep(mesh.triangle_count(), 0);
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t)
        keep[t] = roi.contains(mesh.centroid(static_cast<std::uint32_t>(t))) ? 1 : 0;

    TriangleMesh out = subset_mesh(mesh, keep);
    if (out.empty())
        throw Error(ErrorCode::EmptyResult, "ROI crop removed every triangle; check the ROI box");
    return out;
}

TriangleMesh remove_floating_components(const TriangleMesh& mesh, double min_component_area,
                                        std::size_t* components_removed) {
    if (components_removed) *components_removed = 0;
    if (mesh.empty()) return mesh;

    // Union triangles that share an (undirected) edge.
    UnionFind uf(mesh.triangle_count());
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> edge_owner;
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        for (int c = 0; c < 3; ++c) {
            std::uint32_t a = mesh.triangles[t][c];
            std::uint32_t b = mesh.triangles[t][(c + 1) % 3];
            if (a > b) std::swap(a, b);
            auto [it, inserted] = edge_owner.try_emplace({a, b}, static_cast<std::uint32_t>(t));
            if (!inserted) uf.unite(it->second, static_cast<std::uint32_t>(t));
        }
    }

    std::map<std::uint32_t, double> component_area;
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t)
        component_area[uf.find(static_cast<std::uint32_t>(t))] +=
            mesh.area(static_cast<std::uint32_t>(t));

    std::uint32_t largest_root = component_area.begin()->first;
    for (const auto& [root, area] : component_area)
        if (area > component_area[largest_root]) largest_root = root;

    std::size_t removed = 0;
    std::vector<char> keep(mesh.triangle_count(), 0);
    for (const auto& [root, area] : component_area)
        if (area < min_component_area && root != largest_root) ++removed;
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        const std::uint32_t root = uf.find(static_cast<std::uint32_t>(t));
        keep[t] = (root == largest_root || component_area[root] >= min_component_area) ? 1 : 0;
    }

    if (components_removed) *components_removed = removed;
    return subset_mesh(mesh, keep);
}

TriangleMesh rescale(const TriangleMesh& mesh, double scale) {
    if (!(scale > 0.0)) throw Error(ErrorCode::InvalidScale, "scale must be positive");
    TriangleMesh out = mesh;
    for (Vec3& v : out.vertices) v *= scale;
    return out;
}

TriangleMesh prep_mesh(const TriangleMesh& mesh, const PrepConfig& config, PrepSummary* summary) {
    PrepSummary s;
    s.triangles_before = mesh.triangle_count();

    TriangleMesh out = rescale(mesh, config.scale);
    if (config.roi) out = crop_to_roi(out, *config.roi);
    out = remove_floating_components(out, config.min_component_area, &s.components_removed);

    s.triangles_after = out.triangle_count();
    if (summary) *summary = s;
    return out;
}

}  // namespace lidartwin
