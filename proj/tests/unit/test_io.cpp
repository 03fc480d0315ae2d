#include <doctest.h>

#include "foldquad/errors.hpp"
#include "foldquad/io.hpp"
#include "foldquad/oracle.hpp"
#include "foldquad/presets.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace foldquad;
using foldquad::io::json;

namespace {

std::string temp_file(const std::string& name, const json& j)
{
    const auto path = std::filesystem::temp_directory_path() / ("foldquad_test_" + name + ".json");
    std::ofstream(path) << j.dump(1);
    return path.string();
}

json polyhedron_document(const CurvedPolyhedron& b)
{
    io::GeometryDocument doc;
    doc.dimension = 3;
    TrimmedElement e;
    e.element_id = 5;
    e.solid = b;
    doc.elements.push_back(e);
    return io::to_json(doc);
}

} // namespace

TEST_CASE("curves and polygons round trip")
{
    for (const auto& name : preset_names_2d()) {
        const auto poly = polygon_preset(name);
        const auto back = io::polygon_from_json(json::parse(io::to_json(poly).dump()));
        REQUIRE(back.size() == poly.size());
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (double t : {0.0, 0.3, 0.71, 1.0})
                CHECK(poly.edges()[i].eval(t) == back.edges()[i].eval(t));
    }
    const auto r = ParametricCurve::bezier({{0, 0}, {1, 2}, {3, 0}}).reverse();
    const auto j = io::to_json(r);
    CHECK(j["orientation"] == "reversed");
    CHECK(io::curve_from_json(j).eval(0.25) == r.eval(0.25));
}

TEST_CASE("decompositions round trip")
{
    const auto d = decompose_polyhedron(fig5_polyhedron(), {0, 0, 0.3});
    const auto j = io::to_json(d);
    CHECK(j["summary"]["cells"] == 7);
    CHECK(j["summary"]["jminus"] == 1);
    CHECK(j["cells"][6]["sign_class"]["kind"] == "jminus");
    const auto back = io::decomposition_3d_from_json(json::parse(j.dump()));
    REQUIRE(back.size() == 7);
    CHECK(back.count(SignKind::Jminus) == 1);
    const Vec3 u{0.2, 0.4, 0.6};
    for (std::size_t i = 0; i < 7; ++i) CHECK(distance(back.cells[i].map(u), d.cells[i].map(u)) < 1e-15);

    const auto q = quad_dominant_split(fig6a_polygon().bezier_segmented());
    const auto q2 = io::decomposition_2d_from_json(io::to_json(q));
    CHECK(q2.size() == q.size());
    const auto t = triangulate_from_seed(CurvedPolygon::from_points({{0, 0}, {1, 0}, {0, 1}}), {0, 0});
    CHECK(io::decomposition_2d_from_json(io::to_json(t)).size() == t.size());
}

TEST_CASE("trimmed 3D elements from files")
{
    const auto fig5 = io::load_trimmed_elements_3d(temp_file("fig5", polyhedron_document(fig5_polyhedron())));
    REQUIRE(fig5.size() == 1);
    CHECK(fig5[0].element_id == 5);
    CHECK(fig5[0].solid->size() == 7);
    CHECK(boundary_measure(*fig5[0].solid) == doctest::Approx(fig5_volume()).epsilon(1e-12));

    const auto cube = io::load_trimmed_elements_3d(temp_file("cube", {{"polyhedron", io::to_json(unit_cube())}}));
    REQUIRE(cube.size() == 1);
    CHECK(cube[0].solid->size() == 6);
    CHECK(boundary_measure(*cube[0].solid) == doctest::Approx(1.0).epsilon(1e-14));

    auto faces = unit_cube().faces();
    faces[2] = ParametricFace::untrimmed(faces[2].surface.transposed());
    CHECK_THROWS_AS(io::load_trimmed_elements_3d(temp_file("flipped", polyhedron_document(CurvedPolyhedron(faces)))),
                    OrientationError);
}

TEST_CASE("schema violations")
{
    CHECK_THROWS_AS(io::geometry_from_json(json::parse(R"({"dimension": 2})")), SchemaError);
    CHECK_THROWS_AS(io::geometry_from_json(json::parse(R"({"polygon": {"edges": []}})")), SchemaError);
    CHECK_THROWS_AS(io::curve_from_json(json::parse(R"({"kind": "bezier", "control_points": [[0, 0]]})")), SchemaError);
    CHECK_THROWS_AS(io::curve_from_json(json::parse(R"({"kind": "nurbs", "control_points": [[0, 0], [1, 1]]})")),
                    SchemaError);
    CHECK_THROWS_AS(io::curve_from_json(json::parse(R"({"kind": "bezier", "control_points": [[0, "a"], [1, 1]]})")),
                    SchemaError);
    CHECK_THROWS_AS(io::curve_from_json(json::parse(R"({"kind": "bezier", "degree": 2, "control_points": [[0, 0], [1, 1]]})")),
                    SchemaError);
    CHECK_THROWS_AS(io::load_geometry("/nonexistent/geometry.json"), SchemaError);
    try {
        io::curve_from_json(json::parse(R"({"kind": "bezier"})"));
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("control_points") != std::string::npos);
    }
    const auto doc = io::geometry_from_json(json::parse(io::to_json(io::GeometryDocument{2, fig6a_polygon(), {}, {}}).dump()));
    CHECK(doc.polygon->size() == fig6a_polygon().size());
}

TEST_CASE("csv output")
{
    QuadratureTable t;
    t.dim = 2;
    t.entries.push_back({3, 1, {0.1, 0.2, 0.0}, -0.25});
    std::ostringstream out;
    io::write_table_csv(out, t, json{{"n", 2}});
    std::istringstream in(out.str());
    std::string first, header, row;
    std::getline(in, first);
    std::getline(in, header);
    std::getline(in, row);
    CHECK(first.rfind("# config-fingerprint ", 0) == 0);
    CHECK(header == "element_id,cell_id,x,y,weight");
    CHECK(row == "3,1,1.0000000000000001e-01,2.0000000000000001e-01,-2.5000000000000000e-01");
    CHECK(io::fnv1a("") == 14695981039346656037ull);
    CHECK(io::fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(io::fingerprint_line(json{{"n", 2}}) == io::fingerprint_line(json{{"n", 2}}));
    CHECK(io::fingerprint_line(json{{"n", 2}}) != io::fingerprint_line(json{{"n", 3}}));

    std::ostringstream el;
    io::write_element_csv(el, {{7, ElementClass::Trimmed, 3, 4, 0.5}}, json::object());
    CHECK(el.str().find("element_id,class,cells,n,err\n7,trimmed,3,4,5.0000000000000000e-01\n") != std::string::npos);
}
