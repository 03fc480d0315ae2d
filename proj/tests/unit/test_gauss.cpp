#include <doctest.h>

#include "foldquad/gauss.hpp"

#include <cmath>
#include <stdexcept>

using namespace foldquad;

TEST_CASE("small rules")
{
    const auto& r1 = gauss_legendre(1);
    CHECK(r1.nodes[0] == 0.5);
    CHECK(r1.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    const auto& r2 = gauss_legendre(2);
    CHECK(r2.nodes[0] == doctest::Approx(0.5 - 0.5 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.nodes[1] == doctest::Approx(0.5 + 0.5 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("rule invariants")
{
    for (int n = 1; n <= 64; ++n) {
        const auto& r = gauss_legendre(n);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            s += r.weights[i];
            CHECK(r.weights[i] > 0.0);
            CHECK(std::abs(r.nodes[i] + r.nodes[n - 1 - i] - 1.0) < 1e-15);
            if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
        }
        CHECK(std::abs(s - 1.0) < 1e-14);
    }
    CHECK_THROWS_AS(gauss_legendre(0), std::out_of_range);
    CHECK_THROWS_AS(gauss_legendre(65), std::out_of_range);
}

TEST_CASE("exactness up to degree 2n-1")
{
    for (int n = 1; n <= 30; ++n) {
        const auto& r = gauss_legendre(n);
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], 2 * n - 1);
        CHECK(std::abs(s - 1.0 / (2 * n)) * (2 * n) <= 1e-14);
    }
}

TEST_CASE("error on t^2n follows the Gauss remainder")
{
    // int_0^1 t^2n - Q_n = (n!)^4 / ((2n+1) ((2n)!)^2)
    for (int n = 1; n <= 8; ++n) {
        const auto& r = gauss_legendre(n);
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], 2 * n);
        const double err = 1.0 / (2 * n + 1) - s;
        const double lg = 4 * std::lgamma(n + 1.0) - std::log(2 * n + 1.0) - 2 * std::lgamma(2 * n + 1.0);
        CHECK(err == doctest::Approx(std::exp(lg)).epsilon(1e-6));
        CHECK(err * (2 * n + 1) > 1e-10);
    }
}

TEST_CASE("minimum exact point counts")
{
    CHECK(min_points_exact(12, 2, 3) == 39);
    CHECK(min_points_exact(1, 2, 2) == 4);
    CHECK(min_points_exact(2, 2, 2) == 6);
    CHECK(min_points_exact(3, 2, 2) == 8);
    CHECK(min_points_exact(4, 2, 2) == 10);
    CHECK(min_points_exact(0, 1, 2) == 1);
    CHECK(min_points_exact(1, 1, 3) == 3);
    CHECK_THROWS_AS(min_points_exact(1, 1, 4), std::invalid_argument);
}
