#include <doctest.h>

#include "foldquad/cells.hpp"
#include "foldquad/errors.hpp"
#include "foldquad/gauss.hpp"

#include <cmath>
#include <random>

using namespace foldquad;

namespace {

double area(const CoonsCell& c, int n = 8)
{
    const auto& r = gauss_legendre(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += r.weights[i] * r.weights[j] * c.jacobian({r.nodes[i], r.nodes[j]});
    return s;
}

double volume(const PyramidCell& c, int n = 6)
{
    const auto& r = gauss_legendre(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                s += r.weights[i] * r.weights[j] * r.weights[k] * c.jacobian({r.nodes[i], r.nodes[j], r.nodes[k]});
    return s;
}

PyramidCell unit_pyramid(Vec3 apex)
{
    // Su x Sv points up, towards an apex above the base.
    return PyramidCell(SurfacePatch(TensorSurface::plane({0, 0, 0}, {1, 0, 0}, {0, 1, 0})), apex);
}

CoonsCell random_cell(std::mt19937& rng)
{
    std::uniform_real_distribution<double> d(-0.15, 0.15);
    auto jitter = [&](Vec2 p) { return Vec2{p.x + d(rng), p.y + d(rng)}; };
    const Vec2 p1 = jitter({0, 0}), p2 = jitter({1, 0}), p3 = jitter({1, 1}), p4 = jitter({0, 1});
    return CoonsCell::from_loop({ParametricCurve::bezier({p1, jitter({0.5, 0}), p2}),
                                 ParametricCurve::bezier({p2, jitter({1, 0.33}), jitter({1, 0.67}), p3}),
                                 ParametricCurve::line(p3, p4),
                                 ParametricCurve::bezier({p4, jitter({0, 0.5}), p1})});
}

} // namespace

TEST_CASE("unit square coons is the identity")
{
    const auto c = CoonsCell::unit_square();
    for (double u : {0.0, 0.3, 1.0})
        for (double v : {0.0, 0.6, 1.0}) {
            CHECK(distance(c.map({u, v}), Vec2{u, v}) < 1e-15);
            CHECK(c.jacobian({u, v}) == doctest::Approx(1.0).epsilon(1e-15));
        }
    CHECK(classify_cell(c).kind == SignKind::Jplus);
    CHECK_THROWS_AS(c.jacobian({1.5, 0.5}), std::domain_error);
}

TEST_CASE("reversed loop gives a negative cell")
{
    const CoonsCell c = CoonsCell::from_loop(
        {ParametricCurve::line({0, 0}, {0, 1}), ParametricCurve::line({0, 1}, {1, 1}),
         ParametricCurve::line({1, 1}, {1, 0}), ParametricCurve::line({1, 0}, {0, 0})});
    const auto sc = classify_cell(c);
    CHECK(sc.kind == SignKind::Jminus);
    CHECK(sc.samples == 25);
    CHECK(area(c) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("degenerate triangle")
{
    const auto t = CoonsCell::triangle(ParametricCurve::line({0, 0}, {1, 0}), {0, 1});
    CHECK(area(t) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(classify_cell(t).kind == SignKind::Jplus);
    // Collapsed side: T(u,1) is the apex.
    CHECK(distance(t.map({0.4, 1.0}), Vec2{0, 1}) < 1e-15);
    const auto flat = CoonsCell::triangle(ParametricCurve::line({0, 0}, {1, 0}), {2, 0});
    CHECK(is_zero_measure(flat));
    CHECK(classify_cell(flat).kind == SignKind::Unknown);
}

TEST_CASE("boundary reproduction")
{
    const auto q = ParametricCurve::bezier({{0, 0}, {0.5, -0.3}, {1, 0}});
    const auto c = CoonsCell::from_loop({q, ParametricCurve::line({1, 0}, {1, 1}),
                                         ParametricCurve::bezier({{1, 1}, {0.4, 1.4}, {0, 1}}),
                                         ParametricCurve::line({0, 1}, {0, 0})});
    for (int k = 0; k < 50; ++k) {
        const double t = k / 49.0;
        CHECK(distance(c.map({t, 0}), c.loop()[0].eval(t)) < 1e-12);
        CHECK(distance(c.map({1, t}), c.loop()[1].eval(t)) < 1e-12);
        CHECK(distance(c.map({1 - t, 1}), c.loop()[2].eval(t)) < 1e-12);
        CHECK(distance(c.map({0, 1 - t}), c.loop()[3].eval(t)) < 1e-12);
    }
}

TEST_CASE("open edge loops are rejected")
{
    CHECK_THROWS_AS(CoonsCell::from_loop({ParametricCurve::line({0, 0}, {1, 0}), ParametricCurve::line({1, 0}, {1, 1}),
                                          ParametricCurve::line({1, 1}, {0, 1}),
                                          ParametricCurve::line({0, 1}, {0, 1e-7})}),
                    GeometryError);
    CHECK_NOTHROW(CoonsCell::from_loop({ParametricCurve::line({0, 0}, {1, 0}), ParametricCurve::line({1, 0}, {1, 1}),
                                        ParametricCurve::line({1, 1}, {0, 1}),
                                        ParametricCurve::line({0, 1}, {0, 1e-9})}));
}

TEST_CASE("coons jacobian matches finite differences")
{
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> t01(0.05, 0.95);
    const double h = 1e-6;
    for (int k = 0; k < 10; ++k) {
        const auto c = random_cell(rng);
        for (int s = 0; s < 10; ++s) {
            const Vec2 u{t01(rng), t01(rng)};
            const Vec2 a = (c.map({u.x + h, u.y}) - c.map({u.x - h, u.y})) / (2 * h);
            const Vec2 b = (c.map({u.x, u.y + h}) - c.map({u.x, u.y - h})) / (2 * h);
            const double j = c.jacobian(u);
            CHECK(std::abs(cross(a, b) - j) <= 1e-7 * std::max(1.0, std::abs(j)));
        }
    }
}

TEST_CASE("affine invariance of the jacobian")
{
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> t01(0.0, 1.0);
    const double m00 = 1.3, m01 = -0.4, m10 = 0.7, m11 = 0.9;
    const double det = m00 * m11 - m01 * m10;
    auto A2 = [&](const Vec2& p) { return Vec2{m00 * p.x + m01 * p.y + 0.3, m10 * p.x + m11 * p.y - 2.0}; };
    for (int k = 0; k < 5; ++k) {
        const auto c = random_cell(rng);
        const auto ac = c.transformed(A2);
        for (int s = 0; s < 10; ++s) {
            const Vec2 u{t01(rng), t01(rng)};
            CHECK(std::abs(ac.jacobian(u) - det * c.jacobian(u)) <= 1e-10 * std::abs(det * c.jacobian(u)));
        }
    }
    auto A3 = [](const Vec3& p) { return Vec3{2 * p.x + 0.1 * p.z, p.y - 0.5 * p.x, 0.5 * p.z + 1.0}; };
    const double det3d = 2.0 * 1.0 * 0.5;
    const auto p = unit_pyramid({0.3, 0.6, 0.8});
    const auto ap = p.transformed(A3);
    for (int s = 0; s < 10; ++s) {
        const Vec3 u{t01(rng), t01(rng), t01(rng)};
        CHECK(std::abs(ap.jacobian(u) - det3d * p.jacobian(u)) <= 1e-10 * std::abs(det3d * p.jacobian(u)));
    }
}

TEST_CASE("unit pyramid")
{
    const auto p = unit_pyramid({0.5, 0.5, 1});
    CHECK(volume(p) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(classify_cell(p).kind == SignKind::Jplus);
    for (double u : {0.0, 0.25, 1.0})
        for (double v : {0.0, 0.5, 1.0}) {
            CHECK(p.jacobian({u, v, 1.0}) == 0.0);
            CHECK(distance(p.map({u, v, 1.0}), Vec3{0.5, 0.5, 1}) == 0.0);
        }
    const auto flat = unit_pyramid({0.2, 0.4, 0});
    CHECK(std::abs(volume(flat)) < 1e-15);
    CHECK(is_zero_measure(flat));
    CHECK(classify_cell(unit_pyramid({0.5, 0.5, -1})).kind == SignKind::Jminus);
}

TEST_CASE("pyramid jacobian matches finite differences")
{
    const auto s = TensorSurface::bezier(2, 2, {{1, .2, 0}, {1, .8, .5}, {1, .4, 1},
                                                {.5, .5, 0}, {.5, .5, .5}, {.25, .25, 1},
                                                {.2, 1, 0}, {0, 1, .5}, {.3, 1, 1}});
    const auto tri = CoonsCell::triangle(ParametricCurve::line({0, 0}, {1, 0}), {0.2, 0.9});
    const PyramidCell composed(SurfacePatch(std::make_shared<const TensorSurface>(s), tri, true), {0.1, 0.2, 0.3});
    const PyramidCell fitted(SurfacePatch(s), {0.9, 0.9, 0.1});
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> t01(0.05, 0.95);
    const double h = 1e-6;
    for (const auto* c : {&composed, &fitted}) {
        for (int k = 0; k < 20; ++k) {
            const Vec3 u{t01(rng), t01(rng), t01(rng)};
            const Vec3 a = (c->map({u.x + h, u.y, u.z}) - c->map({u.x - h, u.y, u.z})) / (2 * h);
            const Vec3 b = (c->map({u.x, u.y + h, u.z}) - c->map({u.x, u.y - h, u.z})) / (2 * h);
            const Vec3 w = (c->map({u.x, u.y, u.z + h}) - c->map({u.x, u.y, u.z - h})) / (2 * h);
            const double j = c->jacobian(u);
            CHECK(std::abs(det3(a, b, w) - j) <= 1e-7 * std::max(1.0, std::abs(j)));
        }
    }
}

TEST_CASE("classification refinement never flips sign")
{
    std::mt19937 rng(31);
    for (int k = 0; k < 20; ++k) {
        const auto c = random_cell(rng);
        const auto a = classify_cell(c, 5).kind;
        const auto b = classify_cell(c, 9).kind;
        CHECK_FALSE((a == SignKind::Jplus && b == SignKind::Jminus));
        CHECK_FALSE((a == SignKind::Jminus && b == SignKind::Jplus));
    }
    CHECK_THROWS(classify_cell(CoonsCell::unit_square(), 2));
}
