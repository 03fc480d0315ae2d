#include "foldquad/gauss.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace foldquad {

namespace {

GaussRule1D build_rule(int n)
{
    GaussRule1D rule;
    rule.n = n;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // Newton on P_n over [-1,1], symmetric pairs, Tricomi initial guesses.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-17) break;
        }
        // Final derivative at the converged root.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the i-th largest root; map to [0,1] keeping ascending order.
        const std::size_t lo = static_cast<std::size_t>(i);
        const std::size_t hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = 0.5 * (1.0 - x);
        rule.nodes[hi] = 0.5 * (1.0 + x);
        rule.weights[lo] = 0.5 * w;
        rule.weights[hi] = 0.5 * w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.5;
    return rule;
}

} // namespace

const GaussRule1D& gauss_legendre(int n)
{
    if (n < 1 || n > kMaxGaussPoints)
        throw std::out_of_range("gauss_legendre: n=" + std::to_string(n) + " outside [1, 64]");
    static std::array<GaussRule1D, kMaxGaussPoints + 1> rules;
    static std::array<std::once_flag, kMaxGaussPoints + 1> once;
    const auto k = static_cast<std::size_t>(n);
    std::call_once(once[k], [&] { rules[k] = build_rule(n); });
    return rules[k];
}

int min_points_exact(int p, int q, int d)
{
    if (p < 0 || q < 1) throw std::invalid_argument("min_points_exact: requires p >= 0, q >= 1");
    const int m = q * (p + 1);
    switch (d) {
    case 2: return m;
    case 3: return (3 * m + 1) / 2;
    default: throw std::invalid_argument("min_points_exact: dimension must be 2 or 3");
    }
}

} // namespace foldquad
