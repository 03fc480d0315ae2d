#include <doctest.h>

#include "foldquad/errors.hpp"
#include "foldquad/geometry.hpp"

#include <cmath>
#include <numbers>

using namespace foldquad;

TEST_CASE("polygon area and orientation")
{
    const auto sq = CurvedPolygon::rectangle({0, 0}, {2, 1});
    CHECK(sq.signed_area() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(sq.reversed().signed_area() == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK_NOTHROW(sq.require_valid());
    CHECK_THROWS_AS(sq.reversed().require_valid(), OrientationError);

    const double r = 0.65;
    const auto arc = ParametricCurve::rational_bezier({{r, 0}, {r, r}, {0, r}}, {1, std::sqrt(0.5), 1});
    const CurvedPolygon quarter({ParametricCurve::line({0, 0}, {r, 0}), arc, ParametricCurve::line({0, r}, {0, 0})});
    CHECK(quarter.signed_area() == doctest::Approx(std::numbers::pi * r * r / 4).epsilon(1e-14));
}

TEST_CASE("open loops are rejected")
{
    const CurvedPolygon open({ParametricCurve::line({0, 0}, {1, 0}), ParametricCurve::line({1, 0}, {1, 1}),
                              ParametricCurve::line({1, 1}, {0, 1e-6})});
    CHECK_FALSE(open.is_closed());
    CHECK_THROWS_AS(open.require_valid(), GeometryError);
    CHECK_THROWS_AS(CurvedPolygon{}.require_valid(), GeometryError);
}

TEST_CASE("rotation and bezier segmentation keep the area")
{
    const auto bs = ParametricCurve::bspline(2, {0, 0, 0, 0.25, 0.5, 0.75, 1, 1, 1},
                                             {{0, 0.25}, {0.25, 0}, {0.5, 0.5}, {0.9, 0.25}, {0.8, 0.125}, {0.75, 0}});
    const CurvedPolygon p({ParametricCurve::line({0.75, 0}, {1, 0}), ParametricCurve::line({1, 0}, {1, 1}),
                           ParametricCurve::line({1, 1}, {0, 1}), ParametricCurve::line({0, 1}, {0, 0.25}), bs});
    CHECK_NOTHROW(p.require_valid());
    const double a = p.signed_area();
    CHECK(p.rotated(2).signed_area() == doctest::Approx(a).epsilon(1e-14));
    const auto seg = p.bezier_segmented();
    CHECK(seg.size() == 8);
    CHECK(seg.signed_area() == doctest::Approx(a).epsilon(1e-14));
    CHECK(distance(p.rotated(2).vertices()[0], Vec2{1, 1}) == 0.0);
}
