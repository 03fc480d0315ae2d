#pragma once

#include "foldquad/cells.hpp"
#include "foldquad/decomp.hpp"
#include "foldquad/errors.hpp"
#include "foldquad/gauss.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

namespace foldquad {

using Field2 = std::function<double(const Vec2&)>;
using Field3 = std::function<double(const Vec3&)>;

/// Neumaier compensated sum.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) c_ += (sum_ - t) + x;
        else c_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

/// Calls fn(x, w) for every point of the n^d tensor Gauss rule mapped through the cell, with
/// signed weight w = Jac * (product of 1D weights). Points are visited in lexicographic
/// (u slowest) order.
template <class Cell, class Fn>
void for_each_quadrature_point(const Cell& cell, int n, Fn&& fn)
{
    const auto& r = gauss_legendre(n);
    const auto N = static_cast<std::size_t>(n);
    if constexpr (Cell::dim == 2) {
        Vec2 tu, tv;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                const Vec2 x = cell.map({r.nodes[i], r.nodes[j]}, tu, tv);
                fn(x, r.weights[i] * r.weights[j] * cross(tu, tv));
            }
    } else {
        Vec3 tu, tv, tw;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                for (std::size_t k = 0; k < N; ++k) {
                    const Vec3 x = cell.map({r.nodes[i], r.nodes[j], r.nodes[k]}, tu, tv, tw);
                    fn(x, r.weights[i] * r.weights[j] * r.weights[k] * det3(tu, tv, tw));
                }
    }
}

namespace detail {

template <class P>
[[noreturn]] void throw_non_finite(const P& x, double fx)
{
    std::ostringstream msg;
    msg.precision(17);
    msg << "integrand is not finite (" << fx << ") at x = (" << x[0];
    for (int i = 1; i < P::dim; ++i) msg << ", " << x[i];
    msg << ")";
    throw NumericalError(msg.str());
}

} // namespace detail

/// Signed tensor Gauss rule with n points per direction: sum_q f(T(u_q)) Jac(u_q) w_q.
/// Throws NumericalError naming the point when f is not finite there.
template <class Cell, class F>
double integrate_cell(const Cell& cell, const F& f, int n)
{
    CompensatedSum s;
    for_each_quadrature_point(cell, n, [&](const auto& x, double w) {
        const double fx = f(x);
        if (!std::isfinite(fx)) detail::throw_non_finite(x, fx);
        s.add(fx * w);
    });
    return s.value();
}

/// Integrates m functions at once; f(x, out) writes m values. Returns one integral per function.
template <class Cell, class F>
std::vector<double> integrate_cell_multi(const Cell& cell, const F& f, std::size_t m, int n)
{
    std::vector<CompensatedSum> s(m);
    std::vector<double> buf(m);
    for_each_quadrature_point(cell, n, [&](const auto& x, double w) {
        f(x, buf.data());
        for (std::size_t i = 0; i < m; ++i) {
            if (!std::isfinite(buf[i])) detail::throw_non_finite(x, buf[i]);
            s[i].add(buf[i] * w);
        }
    });
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = s[i].value();
    return out;
}

/// Sum over cells in ascending order. Folded contributions cancel with the overlapping cells.
double integrate_decomposition(const Decomposition2D& d, const Field2& f, int n, int jobs = 1);
double integrate_decomposition(const Decomposition3D& d, const Field3& f, int n, int jobs = 1);

struct QuadratureEntry {
    long element_id = 0;
    int cell_id = 0;
    std::array<double, 3> x{};
    double weight = 0.0;
};

/// Flat list of physical points and signed weights, ordered by (element, cell, point).
/// Negative and zero weights are kept.
struct QuadratureTable {
    int dim = 2;
    std::vector<QuadratureEntry> entries;

    double weight_sum() const;
    /// Compensated sum of f(x) w over all entries.
    double apply(const std::function<double(const std::array<double, 3>&)>& f) const;
};

QuadratureTable export_table(const std::vector<std::pair<long, Decomposition2D>>& elements, int n);
QuadratureTable export_table(const std::vector<std::pair<long, Decomposition3D>>& elements, int n);

} // namespace foldquad
