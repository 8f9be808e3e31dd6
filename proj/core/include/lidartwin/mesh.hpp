#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lidartwin/errors.hpp"
#include "lidartwin/vec3.hpp"

namespace lidartwin {

// Reserved semantic ids. Foreground (actor) classes use ids >= 2.
inline constexpr std::uint32_t kSemanticBackground = 0;
inline constexpr std::uint32_t kSemanticRoad = 1;

// Name -> id map with background/road pinned to 0/1.
class SemanticPalette {
public:
    SemanticPalette() {
        names_["background"] = kSemanticBackground;
        names_["road"] = kSemanticRoad;
        next_id_ = 2;
    }

    // Returns the id for name, assigning the next free id if unseen.
    std::uint32_t id_for(const std::string& name) {
        auto it = names_.find(name);
        if (it != names_.end()) return it->second;
        const std::uint32_t id = next_id_++;
        names_[name] = id;
        return id;
    }

    // Pins name to a specific id (used for actor classes declared in a catalog).
    void assign(const std::string& name, std::uint32_t id);

    bool contains(const std::string& name) const { return names_.count(name) != 0; }
    std::uint32_t at(const std::string& name) const;
    std::string name_of(std::uint32_t id) const;
    const std::map<std::string, std::uint32_t>& names() const { return names_; }

private:
    std::map<std::string, std::uint32_t> names_;
    std::uint32_t next_id_ = 2;
};

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::vector<std::uint32_t> semantic_tags;  // one per triangle

    std::size_t triangle_count() const { return triangles.size(); }
    bool empty() const { return triangles.empty(); }

    Vec3 vertex(std::uint32_t tri, int corner) const {
        return vertices[triangles[tri][corner]];
    }
    Vec3 centroid(std::uint32_t tri) const {
        return (vertex(tri, 0) + vertex(tri, 1) + vertex(tri, 2)) / 3.0;
    }
    double area(std::uint32_t tri) const {
        const Vec3 a = vertex(tri, 0);
        return 0.5 * (vertex(tri, 1) - a).cross(vertex(tri, 2) - a).norm();
    }
    Aabb bounds() const {
        Aabb b;
        for (const Vec3& v : vertices) b.extend(v);
        return b;
    }

    // Throws Error on violated invariants: out-of-range indices, non-finite
    // vertices, degenerate triangles (area <= 1e-12 m^2), or tag count mismatch.
    void validate() const;
};

// Area (m^2) at or below which a triangle counts as degenerate.
inline constexpr double kMinTriangleArea = 1e-12;

}  // namespace lidartwin
