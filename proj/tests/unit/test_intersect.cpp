#include <doctest.h>

#include "foldquad/intersect.hpp"
#include "foldquad/presets.hpp"

#include <cmath>
#include <random>

using namespace foldquad;

namespace {

// Bernstein coefficients of prod (t - r_k) by repeated multiplication with (t - r) = -r B0 + (1-r) B1.
std::vector<double> from_roots(const std::vector<double>& roots)
{
    std::vector<double> c{1.0};
    for (double r : roots) {
        const std::size_t n = c.size();
        std::vector<double> out(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double p = static_cast<double>(n);
            // B_i^{n-1} * B_0^1 = (n-i)/n B_i^n, B_i^{n-1} * B_1^1 = (i+1)/n B_{i+1}^n
            out[i] += c[i] * -r * (p - static_cast<double>(i)) / p;
            out[i + 1] += c[i] * (1.0 - r) * (static_cast<double>(i) + 1.0) / p;
        }
        c = out;
    }
    return c;
}

} // namespace

TEST_CASE("bernstein roots")
{
    const auto r = bernstein_roots(from_roots({0.1, 0.35, 0.8}));
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(r[1] == doctest::Approx(0.35).epsilon(1e-14));
    CHECK(r[2] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(bernstein_roots(from_roots({-0.5, 1.5})).empty());
    CHECK(bernstein_roots({0.0, 0.0, 0.0}).empty());
    const auto e = bernstein_roots(from_roots({0.0, 0.5}));
    REQUIRE(e.size() == 2);
    CHECK(e[0] == 0.0);
    // Double root.
    const auto d = bernstein_roots(from_roots({0.3, 0.3}));
    REQUIRE(d.size() >= 1);
    CHECK(std::abs(d[0] - 0.3) < 1e-6);
}

TEST_CASE("curve and axis line intersections")
{
    const auto arc = ParametricCurve::rational_bezier({{1, 0}, {1, 1}, {0, 1}}, {1.0, std::sqrt(0.5), 1.0});
    const auto t = curve_line_params(arc, 0, std::sqrt(0.5));
    REQUIRE(t.size() == 1);
    CHECK(distance(arc.eval(t[0]), Vec2{std::sqrt(0.5), std::sqrt(0.5)}) < 1e-13);
    const auto tr = curve_line_params(arc.reverse(), 0, std::sqrt(0.5));
    REQUIRE(tr.size() == 1);
    CHECK(tr[0] == doctest::Approx(1.0 - t[0]));
    CHECK(curve_line_params(ParametricCurve::line({0, 0.5}, {1, 0.5}), 1, 0.5).empty());
}

TEST_CASE("winding numbers")
{
    const auto poly = fig6a_polygon();
    CHECK(winding_number(poly, {0.9, 0.9}) == doctest::Approx(1.0));
    CHECK(std::abs(winding_number(poly, {0.05, 0.05})) < 1e-12);
    CHECK(std::abs(winding_number(poly, {2.0, 0.5})) < 1e-12);
    CHECK(winding_number(poly.reversed(), {0.9, 0.9}) == doctest::Approx(-1.0));
    CHECK(std::isnan(winding_number(poly, {1.0, 0.5})));
    const auto disk = fig7a_polygon();
    CHECK(winding_number(disk, {0.3, 0.3}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(winding_number(disk, {0.5, 0.45}) == doctest::Approx(1.0));
}

TEST_CASE("distance to curves")
{
    const auto arc = ParametricCurve::rational_bezier({{1, 0}, {1, 1}, {0, 1}}, {1.0, std::sqrt(0.5), 1.0});
    CHECK(distance_to_curve(arc, {0.3, 0.4}) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(distance_to_curve(ParametricCurve::line({0, 0}, {1, 0}), {2, 1}) == doctest::Approx(std::sqrt(2.0)));
}
