#include <doctest.h>

#include "foldquad/decomp.hpp"
#include "foldquad/errors.hpp"
#include "foldquad/oracle.hpp"
#include "foldquad/presets.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace foldquad;

TEST_CASE("bernstein antiderivative by finite differences")
{
    Box2 box;
    box.add(Vec2{0.25, -0.5});
    box.add(Vec2{0.75, 0.5});
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 2.0);
    BernsteinPolynomial2 b{box, 3, {}};
    for (int k = 0; k < 16; ++k) b.coeffs.push_back(d(rng));
    const auto F = b.antiderivative();
    for (int k = 0; k < 100; ++k) {
        const Vec2 x{d(rng), d(rng)};
        const double h = 1e-5;
        const double fd = (F.F1({x.x + h, x.y}) - F.F1({x.x - h, x.y})) / (2 * h);
        CHECK(std::abs(fd - F.f(x)) < 1e-7 * (1.0 + std::abs(F.f(x))));
    }
    // Unit Bernstein basis functions integrate to area/(p+1)^2 over their box.
    const auto u = BernsteinPolynomial2::unit(box, 2, 1, 2);
    CHECK(u.antiderivative_x({0.75, 0.0}) == doctest::Approx(0.5 / 3.0 * 0.25));

    Box3 b3;
    b3.add(Vec3{0, 0, 0});
    b3.add(Vec3{1, 2, 1});
    const auto u3 = BernsteinPolynomial3::unit(b3, 2, 0, 1, 2);
    const double h = 1e-5;
    const Vec3 x{0.3, 0.7, 0.4};
    CHECK((u3.antiderivative_x({x.x + h, x.y, x.z}) - u3.antiderivative_x({x.x - h, x.y, x.z})) / (2 * h) ==
          doctest::Approx(u3(x)).epsilon(1e-8));
}

TEST_CASE("boundary integrals")
{
    const auto sq = CurvedPolygon::rectangle({0, 0}, {1, 1});
    CHECK(boundary_measure(sq) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(boundary_measure(unit_cube()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(boundary_measure(fig5_polyhedron(), 1) == doctest::Approx(fig5_volume()).epsilon(1e-12));
    CHECK(boundary_measure(fig7a_polygon()) == doctest::Approx(fig7a_area()).epsilon(1e-13));
    const auto smooth = smooth_test_function_2d();
    // Axis 1 field for the same integrand: F1 = int f dy.
    const double a = boundary_integral(sq, smooth);
    CHECK(a == doctest::Approx((1 - std::cos(1.0)) * 0.5 * (std::exp(1.0) * (std::cos(1.0) + std::sin(1.0)) - 1)).epsilon(1e-12));
    const auto bad = CurvedPolygon({ParametricCurve::line({0, 0}, {1, 0}), ParametricCurve::bezier({{1, 0}, {1, 0}, {1, 1}}),
                                    ParametricCurve::line({1, 1}, {0, 0})});
    CHECK_NOTHROW(boundary_measure(bad));
    const auto stuck = CurvedPolygon({ParametricCurve::line({0, 0}, {1, 0}), ParametricCurve::point({1, 0}),
                                      ParametricCurve::line({1, 0}, {0, 1}), ParametricCurve::line({0, 1}, {0, 0})});
    CHECK_THROWS_AS(boundary_measure(stuck), GeometryError);
}

TEST_CASE("orientation check")
{
    CHECK_NOTHROW(require_outward_closed(unit_cube()));
    CHECK_NOTHROW(require_outward_closed(fig5_polyhedron()));
    CHECK_NOTHROW(require_outward_closed(fig8a_polyhedron()));
    auto faces = unit_cube().faces();
    faces[2].surface = faces[2].surface.transposed();
    CHECK_THROWS_AS(require_outward_closed(CurvedPolyhedron(faces)), OrientationError);
    auto open = unit_cube().faces();
    open.pop_back();
    CHECK_THROWS_AS(require_outward_closed(CurvedPolyhedron(open)), GeometryError);
}

TEST_CASE("signed count")
{
    Decomposition2D single;
    single.add(CoonsCell::unit_square());
    CHECK(signed_count(Vec2{0.3, 0.6}, single) == 1);
    CHECK(signed_count(Vec2{5.0, 5.0}, single) == 0);

    // Exterior seed: the region between the far edges and the seed is covered +1 and -1.
    const auto hex = CurvedPolygon::from_points({{1, 0}, {0.5, 0.8}, {-0.5, 0.8}, {-1, 0}, {-0.5, -0.8}, {0.5, -0.8}});
    const auto d = triangulate_from_seed(hex, {2.0, 1.5});
    CHECK(signed_count(Vec2{0.0, 0.0}, d) == 1);
    CHECK(signed_count(Vec2{1.2, 0.8}, d) == 0);
    CHECK(signed_count(Vec2{-3.0, 0.0}, d) == 0);

    const auto cube = decompose_polyhedron(unit_cube(), {1.5, 0.4, -0.3});
    CHECK(signed_count(Vec3{0.5, 0.5, 0.5}, cube) == 1);
    CHECK(signed_count(Vec3{1.2, 0.4, -0.1}, cube) == 0);
    CHECK(distance_to_cell_boundaries(Vec3{0.5, 0.5, 0.5}, decompose_polyhedron(unit_cube(), {0.5, 0.5, 0.5})) <
          1e-9);
}

TEST_CASE("dense reference")
{
    const auto sq = dense_region(CurvedPolygon::rectangle({0, 0}, {1, 1}));
    CHECK(dense_reference(sq, [](const Vec2&) { return 1.0; }, 4) == doctest::Approx(1.0).epsilon(1e-15));
    const auto cube = dense_region(unit_cube());
    CHECK(dense_reference(cube, [](const Vec3& x) { return x.x; }, 2, 1) == doctest::Approx(0.5).epsilon(1e-14));
    const auto q = preset_dense_region_2d("fig7a");
    CHECK(std::abs(dense_reference(q, [](const Vec2&) { return 1.0; }, 16, 10) - fig7a_area()) < 1e-5);
    const auto g = dense_region(fig6a_polygon());
    CHECK(std::abs(dense_reference(g, [](const Vec2&) { return 1.0; }, 16, 8) - fig6a_polygon().signed_area()) < 1e-4);
}

TEST_CASE("generalized winding number")
{
    const auto brep = fig5_polyhedron();
    CHECK(generalized_winding_number(brep, {0.8, 0.8, 0.5}) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(generalized_winding_number(brep, {0.2, 0.2, 0.5})) < 1e-6);
    CHECK(std::abs(generalized_winding_number(brep, {1.5, 0.2, 0.5})) < 1e-6);
}
