#include <doctest.h>

#include <fstream>

#include "lidartwin/obj_io.hpp"
#include "test_support.hpp"

using namespace lidartwin;
using namespace lidartwin::test;

namespace {

std::string write_temp_obj(const TempDir& tmp, const std::string& body,
                           const std::string& name = "mesh.obj") {
    std::ofstream out(tmp.str(name));
    out << body;
    return tmp.str(name);
}

}  // namespace

TEST_CASE("semantic comments assign tags to following faces") {
    TempDir tmp("obj");
    const std::string path = write_temp_obj(tmp,
                                            "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 1 1 0\n"
                                            "# semantic:road\n"
                                            "f 1 2 3\n"
                                            "# semantic:building\n"
                                            "f 2 4 3\n");
    SemanticPalette palette;
    const TriangleMesh mesh = load_obj(path, palette);
    REQUIRE(mesh.triangle_count() == 2);
    CHECK(mesh.semantic_tags[0] == kSemanticRoad);
    CHECK(mesh.semantic_tags[1] == palette.at("building"));
    CHECK(palette.at("building") >= 2);
}

TEST_CASE("faces before any semantic comment default to background") {
    TempDir tmp("obj");
    const std::string path =
        write_temp_obj(tmp, "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
    SemanticPalette palette;
    const TriangleMesh mesh = load_obj(path, palette);
    CHECK(mesh.semantic_tags[0] == kSemanticBackground);
}

TEST_CASE("malformed lines report the line number") {
    TempDir tmp("obj");
    const std::string path = write_temp_obj(tmp, "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2\n");
    SemanticPalette palette;
    try {
        load_obj(path, palette);
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find(":4:") != std::string::npos);
    }
}

TEST_CASE("unsupported directives and bad indices are rejected") {
    TempDir tmp("obj");
    SemanticPalette palette;
    CHECK_THROWS_AS(load_obj(write_temp_obj(tmp, "vn 0 0 1\n", "a.obj"), palette), Error);
    CHECK_THROWS_AS(load_obj(write_temp_obj(tmp, "v 0 0 0\nf 1 2 3\n", "b.obj"), palette), Error);
    CHECK_THROWS_AS(load_obj(write_temp_obj(tmp, "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n", "c.obj"),
                             palette),
                    Error);
}

TEST_CASE("degenerate faces are dropped at load and counted") {
    TempDir tmp("obj");
    const std::string path = write_temp_obj(
        tmp, "v 0 0 0\nv 1 0 0\nv 2 0 0\nv 0 1 0\nf 1 2 3\nf 1 2 4\n");  // first face is a sliver
    SemanticPalette palette;
    std::size_t dropped = 0;
    const TriangleMesh mesh = load_obj(path, palette, &dropped);
    CHECK(dropped == 1);
    CHECK(mesh.triangle_count() == 1);
}

TEST_CASE("save/load round trip preserves geometry and tags") {
    TestRng rng(71);
    TriangleMesh mesh = random_mesh(rng, 60);
    SemanticPalette palette;
    const std::uint32_t wall = palette.id_for("wall");
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t)
        mesh.semantic_tags[t] = (t % 3 == 0) ? wall : (t % 3 == 1 ? kSemanticRoad
                                                                  : kSemanticBackground);

    TempDir tmp("obj");
    save_obj(tmp.str("out.obj"), mesh, palette);
    SemanticPalette palette2;
    const TriangleMesh back = load_obj(tmp.str("out.obj"), palette2);

    REQUIRE(back.triangle_count() == mesh.triangle_count());
    CHECK(back.triangles == mesh.triangles);
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
        CHECK(back.vertices[i] == mesh.vertices[i]);  // %.17g round trip is exact
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t)
        CHECK(palette2.name_of(back.semantic_tags[t]) == palette.name_of(mesh.semantic_tags[t]));
}
