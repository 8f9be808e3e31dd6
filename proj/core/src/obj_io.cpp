#include "lidartwin/obj_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lidartwin/errors.hpp"
#include "lidartwin/fs_util.hpp"

namespace lidartwin {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& why) {
    std::ostringstream os;
    os << path << ":" << line_no << ": " << why;
    throw Error(ErrorCode::ParseError, os.str());
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

TriangleMesh load_obj(const std::string& path, SemanticPalette& palette,
                      std::size_t* degenerate_dropped) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open OBJ file " + path);

    TriangleMesh mesh;
    std::uint32_t current_tag = kSemanticBackground;
    std::size_t dropped = 0;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty()) continue;

        if (s[0] == '#') {
            const std::string body = trim(s.substr(1));
            if (body.rfind("semantic:", 0) == 0) {
                const std::string name = trim(body.substr(9));
                if (name.empty()) parse_fail(path, line_no, "empty semantic tag name");
                current_tag = palette.id_for(name);
            }
            continue;  // plain comment
        }

        std::istringstream is(s);
        std::string kind;
        is >> kind;
        if (kind == "v") {
            Vec3 v;
            if (!(is >> v.x >> v.y >> v.z)) parse_fail(path, line_no, "malformed vertex line");
            std::string extra;
            if (is >> extra) parse_fail(path, line_no, "trailing tokens on vertex line");
            if (!v.finite()) parse_fail(path, line_no, "non-finite vertex coordinate");
            mesh.vertices.push_back(v);
        } else if (kind == "f") {
            long i = 0, j = 0, k = 0;
            if (!(is >> i >> j >> k)) parse_fail(path, line_no, "malformed face line (triangles only)");
            std::string extra;
            if (is >> extra) parse_fail(path, line_no, "face is not a triangle");
            const long n = static_cast<long>(mesh.vertices.size());
            for (long idx : {i, j, k})
                if (idx < 1 || idx > n) parse_fail(path, line_no, "face index out of range");
            mesh.triangles.push_back({static_cast<std::uint32_t>(i - 1),
                                      static_cast<std::uint32_t>(j - 1),
                                      static_cast<std::uint32_t>(k - 1)});
            mesh.semantic_tags.push_back(current_tag);
            if (mesh.area(static_cast<std::uint32_t>(mesh.triangle_count() - 1)) <=
                kMinTriangleArea) {
                mesh.triangles.pop_back();
                mesh.semantic_tags.pop_back();
                ++dropped;
            }
        } else {
            parse_fail(path, line_no, "unsupported OBJ directive '" + kind + "'");
        }
    }

    if (degenerate_dropped) *degenerate_dropped = dropped;
    return mesh;
}

void save_obj(const std::string& path, const TriangleMesh& mesh, const SemanticPalette& palette) {
    std::ostringstream out;
    char buf[128];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        out << buf;
    }

    bool first = true;
    std::uint32_t last_tag = 0;
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        const std::uint32_t tag = mesh.semantic_tags[t];
        if (first || tag != last_tag) {
            out << "# semantic:" << palette.name_of(tag) << "\n";
            last_tag = tag;
            first = false;
        }
        out << "f " << mesh.triangles[t][0] + 1 << " " << mesh.triangles[t][1] + 1 << " "
            << mesh.triangles[t][2] + 1 << "\n";
    }
    write_file_atomic(path, out.str());
}

}  // namespace lidartwin
