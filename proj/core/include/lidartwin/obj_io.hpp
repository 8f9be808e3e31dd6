#pragma once

#include <string>

#include "lidartwin/mesh.hpp"

namespace lidartwin {

// ASCII OBJ subset: `v x y z` and triangulated `f i j k` lines (1-based
// indices). A `# semantic:<name>` comment assigns that tag to the faces that
// follow, until the next such comment. Anything else except blank lines and
// plain comments is a ParseError carrying the line number.
//
// Degenerate faces (area <= 1e-12 m^2) are dropped at load; the count of
// dropped faces is reported via the optional out-parameter.
TriangleMesh load_obj(const std::string& path, SemanticPalette& palette,
                      std::size_t* degenerate_dropped = nullptr);

// Writes the same subset back, emitting `# semantic:<name>` whenever the tag
// of consecutive faces changes. Deterministic byte output.
void save_obj(const std::string& path, const TriangleMesh& mesh, const SemanticPalette& palette);

}  // namespace lidartwin
