#include <doctest.h>

#include "foldquad/decomp.hpp"
#include "foldquad/errors.hpp"
#include "foldquad/presets.hpp"
#include "foldquad/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace foldquad;

namespace {

double one2(const Vec2&) { return 1.0; }
double one3(const Vec3&) { return 1.0; }

CurvedPolygon regular_polygon(int n, double r = 1.0)
{
    std::vector<Vec2> p;
    for (int k = 0; k < n; ++k) {
        const double a = 2.0 * std::numbers::pi * k / n;
        p.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return CurvedPolygon::from_points(p);
}

} // namespace

TEST_CASE("quad dominant split cell counts")
{
    for (int n = 3; n <= 12; ++n) {
        const auto d = quad_dominant_split(regular_polygon(n));
        CHECK(d.size() == static_cast<std::size_t>((n - 1) / 2));
        const double area = 0.5 * n * std::sin(2.0 * std::numbers::pi / n);
        CHECK(integrate_decomposition(d, one2, 4) == doctest::Approx(area).epsilon(1e-13));
    }
    CHECK(quad_dominant_split(CurvedPolygon::rectangle({0, 0}, {1, 1})).size() == 1);
    CHECK(quad_dominant_split(fig6a_polygon().bezier_segmented()).size() == 3);
    CHECK(quad_dominant_split(fig6a_polygon()).size() == 2);
    CHECK_THROWS_AS(quad_dominant_split(CurvedPolygon({ParametricCurve::line({0, 0}, {1, 0}),
                                                       ParametricCurve::line({1, 0}, {0, 0})})),
                    GeometryError);
}

TEST_CASE("seed triangulation of a convex polygon")
{
    const auto poly = regular_polygon(6);
    const double area = 1.5 * std::sqrt(3.0);
    const auto inner = triangulate_from_seed(poly, {0.1, -0.2});
    CHECK(inner.size() == 6);
    CHECK(inner.kind() == DecompositionKind::JplusCertified);
    CHECK(integrate_decomposition(inner, one2, 2) == doctest::Approx(area).epsilon(1e-14));

    const auto outer = triangulate_from_seed(poly, {3.0, 2.5});
    CHECK(outer.count(SignKind::Jminus) >= 1);
    CHECK(outer.kind() == DecompositionKind::Folded);
    CHECK(std::abs(integrate_decomposition(outer, one2, 2) - area) < 1e-12 * area);

    // A vertex between two straight edges drops both of them.
    const auto vert = triangulate_from_seed(poly, poly.vertices()[2]);
    CHECK(vert.size() == 4);
    // Every vertex gives 4 cells; the tie goes to the smallest coordinates.
    CHECK(choose_seed_min_cells(poly) == poly.vertices()[std::size_t{3}]);
}

TEST_CASE("seed triangulation of curved presets agrees with the area")
{
    for (const auto& name : {"fig6a", "fig7a"}) {
        const auto poly = polygon_preset(name);
        const double area = poly.signed_area();
        for (Vec2 seed : {Vec2{0.9, 0.9}, Vec2{-0.5, 2.0}, Vec2{0.1, 0.1}, poly.vertices()[1]}) {
            const auto d = triangulate_from_seed(poly.bezier_segmented(), seed);
            CHECK(std::abs(integrate_decomposition(d, one2, 30) - area) < 1e-12);
        }
    }
    CHECK(std::abs(fig7a_polygon().signed_area() - fig7a_area()) < 1e-14);
}

TEST_CASE("fig5 decomposition: 7 cells, one negative")
{
    const auto brep = fig5_polyhedron();
    const auto bottom = decompose_face(brep.faces()[0]);
    CHECK(bottom.size() == 2);
    CHECK(decompose_face(brep.faces()[6]).size() == 1);
    const auto d = decompose_polyhedron(brep, {0, 0, 0.3});
    CHECK(d.size() == 7);
    CHECK(d.count(SignKind::Jplus) == 6);
    CHECK(d.count(SignKind::Jminus) == 1);
    CHECK(d.signs.back().kind == SignKind::Jminus);
    CHECK(d.cells.back().source_face() == 6);
    const double v = integrate_decomposition(d, one3, 10);
    CHECK(std::abs(v - fig5_volume()) < 1e-10 * fig5_volume());
}

TEST_CASE("fig5 at large scale keeps the relative volume")
{
    const double s = 1000.0;
    const auto d = decompose_polyhedron(fig5_polyhedron(s, 0.65 * s), {0, 0, 0.3 * s});
    CHECK(d.size() == 7);
    CHECK(std::abs(integrate_decomposition(d, one3, 10) / fig5_volume(s, 0.65 * s) - 1.0) < 1e-10);
}

TEST_CASE("unit cube decompositions")
{
    const auto cube = unit_cube();
    const auto corner = decompose_polyhedron(cube, {0, 0, 0});
    CHECK(corner.size() == 3);
    CHECK(integrate_decomposition(corner, one3, 2) == doctest::Approx(1.0).epsilon(1e-14));
    const auto inner = decompose_polyhedron(cube, {0.5, 0.5, 0.5});
    CHECK(inner.size() == 6);
    CHECK(inner.count(SignKind::Jplus) == 6);
    CHECK(integrate_decomposition(inner, one3, 2) == doctest::Approx(1.0).epsilon(1e-14));
    const auto outer = decompose_polyhedron(cube, {2.0, -1.0, 0.4});
    CHECK(outer.kind() == DecompositionKind::Folded);
    CHECK(integrate_decomposition(outer, one3, 2) == doctest::Approx(1.0).epsilon(1e-13));
    const Vec3 best = choose_seed_min_cells(cube);
    CHECK(best == Vec3{0, 0, 0});
}

TEST_CASE("fig8a decomposition volume is seed independent")
{
    const auto brep = fig8a_polyhedron();
    const auto a = decompose_polyhedron(brep, {1, 1, 0.5});
    CHECK(a.kind() == DecompositionKind::JplusCertified);
    const double va = integrate_decomposition(a, one3, 12);
    for (Vec3 seed : {Vec3{0, 0, 0}, Vec3{0.3, 0.9, 0.1}, Vec3{1, 0.2, 0}}) {
        const auto b = decompose_polyhedron(brep, seed);
        CHECK(std::abs(integrate_decomposition(b, one3, 12) - va) < 1e-12);
    }
}

TEST_CASE("fitted faces keep corners")
{
    DecomposeOptions opt;
    opt.fit_degree = 2;
    const auto brep = fig5_polyhedron();
    const auto d = decompose_polyhedron(brep, {0, 0, 0.3}, opt);
    CHECK(d.size() == 7);
    // Quadratic fits of the arc are approximate.
    CHECK(std::abs(integrate_decomposition(d, one3, 10) - fig5_volume()) < 1e-2);
}

TEST_CASE("seed lattice")
{
    Box2 b;
    b.add(Vec2{0, 0});
    b.add(Vec2{1, 2});
    const auto s = seed_lattice(b, 11);
    CHECK(s.size() == 121);
    CHECK(s.front() == Vec2{0, 0});
    CHECK(s.back() == Vec2{1, 2});
    CHECK(s[1].x == 0.0);
    CHECK_THROWS(seed_lattice(b, 1));
}
