#include <doctest.h>

#include "foldquad/errors.hpp"
#include "foldquad/immersed.hpp"
#include "foldquad/intersect.hpp"
#include "foldquad/presets.hpp"

#include <cmath>
#include <random>

using namespace foldquad;

namespace {

Box2 unit_box()
{
    Box2 b;
    b.add(Vec2{0, 0});
    b.add(Vec2{1, 1});
    return b;
}

} // namespace

TEST_CASE("grid ids")
{
    auto g = CartesianGrid2D::covering(unit_box(), 8);
    CHECK(g.size() == 64);
    CHECK(g.id({3, 5}) == 43);
    CHECK(g.index(43) == std::array<int, 2>{3, 5});
    const Box2 b = g.element_box(43);
    CHECK(b.lo.x == 0.375);
    CHECK(b.lo.y == 0.625);
    CHECK_THROWS(CartesianGrid2D::covering(unit_box(), 0));
}

TEST_CASE("diagonal cut of a unit box")
{
    const auto tri = CurvedPolygon::from_points({{-1, -1}, {2, -1}, {-1, 2}});
    const auto e = trim_element_2d(unit_box(), tri);
    REQUIRE(e.loops.size() == 1);
    CHECK(e.loops[0].size() == 3);
    CHECK(trimmed_area(e) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("fig6a classification against point sampling")
{
    const auto poly = fig6a_polygon();
    const auto g = CartesianGrid2D::covering(unit_box(), 8);
    const auto cls = classify_elements(g, poly);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int trimmed = 0;
    for (long id = 0; id < g.size(); ++id) {
        const auto c = cls[static_cast<std::size_t>(id)];
        trimmed += c == ElementClass::Trimmed;
        if (c == ElementClass::Trimmed) continue;
        const Box2 b = g.element_box(id);
        for (int k = 0; k < 1000; ++k) {
            const Vec2 p{b.lo.x + u(rng) * 0.125, b.lo.y + u(rng) * 0.125};
            const double w = winding_number(poly, p);
            CHECK((std::abs(w) > 0.5) == (c == ElementClass::ActiveFull));
        }
    }
    CHECK(trimmed > 0);
    // Elements touching x = 1 or y = 1 meet the boundary.
    CHECK(cls[static_cast<std::size_t>(g.id({7, 4}))] == ElementClass::Trimmed);
    CHECK(cls[static_cast<std::size_t>(g.id({4, 4}))] == ElementClass::ActiveFull);
}

TEST_CASE("trimmed areas add up to the domain area")
{
    for (const auto& name : {"fig6a", "fig7a"}) {
        const auto poly = polygon_preset(name);
        for (int n : {1, 2, 3, 8, 16}) {
            const auto g = CartesianGrid2D::covering(unit_box(), n);
            const auto cls = classify_elements(g, poly);
            const auto elems = trimmed_elements(g, poly, cls);
            CompensatedSum s;
            for (const auto& e : elems) s.add(trimmed_area(e));
            for (std::size_t i = 0; i < cls.size(); ++i)
                if (cls[i] == ElementClass::ActiveFull) s.add(g.element_box(static_cast<long>(i)).measure());
            CHECK(std::abs(s.value() - poly.signed_area()) < 1e-12);
            const double one = integrate_immersed(g, cls, elems, [](const Vec2&) { return 1.0; }, 24);
            CHECK(std::abs(one - poly.signed_area()) < 1e-12);
        }
    }
}

TEST_CASE("box corner on the boundary still closes")
{
    // The polygon boundary passes exactly through the box corner (0.5, 0.5).
    const auto tri = CurvedPolygon({ParametricCurve::line({0, 0}, {1, 0}),
                                    ParametricCurve::bezier({{1, 0}, {0.9, 0.4}, {0.5, 0.5}}),
                                    ParametricCurve::bezier({{0.5, 0.5}, {0.3, 0.6}, {0.25, 1}}),
                                    ParametricCurve::line({0.25, 1}, {0, 1}), ParametricCurve::line({0, 1}, {0, 0})});
    Box2 b;
    b.add(Vec2{0.5, 0.5});
    b.add(Vec2{1, 1});
    const auto e = trim_element_2d(b, tri);
    CHECK(std::abs(trimmed_area(e)) < 1e-12);
    Box2 c;
    c.add(Vec2{0, 0});
    c.add(Vec2{0.5, 0.5});
    const auto f = trim_element_2d(c, tri);
    CHECK(trimmed_area(f) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("bernstein errors on the fig6a grid")
{
    const auto poly = fig6a_polygon();
    const auto g = CartesianGrid2D::covering(unit_box(), 8);
    const auto cls = classify_elements(g, poly);
    const auto elems = trimmed_elements(g, poly, cls);
    CHECK(bernstein_integral_errors(g, elems, 1, 4).err <= 1e-13);
    CHECK(bernstein_integral_errors(g, elems, 2, 64).err == 0.0);
    CHECK(bernstein_integral_errors(g, elems, 2, 2).err > 1e-10);
    const auto sweep = bernstein_integral_errors(g, elems, 1, 3, {}, 3);
    CHECK(sweep.elements.size() == elems.size());
    CHECK(sweep.err > 0.0);
}

TEST_CASE("seed strategies")
{
    CHECK(SeedStrategy::parse("vertex:3").vertex == 3);
    CHECK(SeedStrategy::parse("min-cells").kind == SeedStrategy::Kind::MinCells);
    CHECK_THROWS(SeedStrategy::parse("vertex:x"));
    CHECK_THROWS(SeedStrategy::parse("random"));
    const auto tri = CurvedPolygon::from_points({{-1, -1}, {2, -1}, {-1, 2}});
    const auto e = trim_element_2d(unit_box(), tri);
    CHECK(decompose_trimmed(e).size() == 1);
    SeedStrategy q;
    q.kind = SeedStrategy::Kind::QuadDominant;
    CHECK(integrate_decomposition(decompose_trimmed(e, q), [](const Vec2&) { return 1.0; }, 2) ==
          doctest::Approx(0.5));
}

TEST_CASE("immersed table weights")
{
    const auto poly = fig6a_polygon();
    const auto g = CartesianGrid2D::covering(unit_box(), 8);
    const auto cls = classify_elements(g, poly);
    const auto elems = trimmed_elements(g, poly, cls);
    const auto t = immersed_table(g, cls, elems, 4);
    CHECK(std::abs(t.weight_sum() - poly.signed_area()) < 1e-12);
    SeedStrategy far;
    far.kind = SeedStrategy::Kind::Point;
    far.point = {-3.0, -3.0};
    const auto t2 = immersed_table(g, cls, elems, 4, far);
    bool negative = false;
    for (const auto& q : t2.entries) negative |= q.weight < 0.0;
    CHECK(negative);
    CHECK(std::abs(t2.weight_sum() - poly.signed_area()) < 1e-12);
}

TEST_CASE("an element equal to the region becomes full")
{
    const auto sq = CurvedPolygon::rectangle({0, 0}, {1, 1});
    const auto g = CartesianGrid2D::covering(unit_box(), 1);
    auto cls = classify_elements(g, sq);
    CHECK(cls[0] == ElementClass::Trimmed);
    auto elems = settle_classes(g, cls, trimmed_elements(g, sq, cls));
    CHECK(elems.empty());
    CHECK(cls[0] == ElementClass::ActiveFull);
    const auto t = immersed_table(g, cls, elems, 2);
    CHECK(t.entries.size() == 4);
    CHECK(t.weight_sum() == doctest::Approx(1.0).epsilon(1e-15));

    const auto poly = fig6a_polygon();
    const auto g8 = CartesianGrid2D::covering(unit_box(), 8);
    auto c8 = classify_elements(g8, poly);
    const auto all = trimmed_elements(g8, poly, c8);
    const auto kept = settle_classes(g8, c8, all);
    // Elements along x = 1 and y = 1 only touch the boundary.
    CHECK(kept.size() < all.size());
    CHECK(std::abs(immersed_table(g8, c8, kept, 3).weight_sum() - poly.signed_area()) < 1e-12);
}
