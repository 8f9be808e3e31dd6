#include "lidartwin/mesh.hpp"

#include <sstream>

namespace lidartwin {

void SemanticPalette::assign(const std::string& name, std::uint32_t id) {
    auto it = names_.find(name);
    if (it != names_.end()) {
        if (it->second != id)
            throw Error(ErrorCode::ConfigInvalid,
                        "semantic class '" + name + "' already mapped to id " +
                            std::to_string(it->second));
        return;
    }
    for (const auto& [n, existing] : names_)
        if (existing == id)
            throw Error(ErrorCode::ConfigInvalid,
                        "semantic id " + std::to_string(id) + " already taken by '" + n + "'");
    names_[name] = id;
    if (id >= next_id_) next_id_ = id + 1;
}

std::uint32_t SemanticPalette::at(const std::string& name) const {
    auto it = names_.find(name);
    if (it == names_.end())
        throw Error(ErrorCode::ConfigInvalid, "unknown semantic class '" + name + "'");
    return it->second;
}

std::string SemanticPalette::name_of(std::uint32_t id) const {
    for (const auto& [n, existing] : names_)
        if (existing == id) return n;
    return "class_" + std::to_string(id);
}

void TriangleMesh::validate() const {
    if (semantic_tags.size() != triangles.size())
        throw Error(ErrorCode::ConfigInvalid, "semantic tag count does not match triangle count");
    for (const Vec3& v : vertices)
        if (!v.finite()) throw Error(ErrorCode::ConfigInvalid, "non-finite vertex coordinate");
    const std::uint32_t n = static_cast<std::uint32_t>(vertices.size());
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        for (int c = 0; c < 3; ++c)
            if (triangles[t][c] >= n) {
                std::ostringstream os;
                os << "triangle " << t << " references vertex " << triangles[t][c]
                   << " out of " << n;
                throw Error(ErrorCode::ConfigInvalid, os.str());
            }
        if (area(static_cast<std::uint32_t>(t)) <= kMinTriangleArea)
            throw Error(ErrorCode::DegenerateTriangle,
                        "triangle " + std::to_string(t) + " is degenerate");
    }
}

}  // namespace lidartwin
