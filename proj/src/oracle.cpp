#include "foldquad/oracle.hpp"

#include "foldquad/errors.hpp"
#include "foldquad/intersect.hpp"
#include "foldquad/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

namespace foldquad {

// ---------------------------------------------------------------- polynomials

namespace {

void bernstein_values(int p, double t, std::vector<double>& out)
{
    out.resize(static_cast<std::size_t>(p) + 1);
    basis::bernstein(p, t, out);
}

// (1/(p+1)) sum_{k>i} B_k^{p+1}(t): the antiderivative of B_i^p vanishing at 0.
void bernstein_integrals(int p, double t, std::vector<double>& out)
{
    thread_local std::vector<double> up;
    up.resize(static_cast<std::size_t>(p) + 2);
    basis::bernstein(p + 1, t, up);
    out.assign(static_cast<std::size_t>(p) + 1, 0.0);
    double tail = 0.0;
    for (int i = p; i >= 0; --i) {
        tail += up[static_cast<std::size_t>(i) + 1];
        out[static_cast<std::size_t>(i)] = tail / (p + 1);
    }
}

double local(double x, double lo, double hi) { return (x - lo) / (hi - lo); }

} // namespace

BernsteinPolynomial2 BernsteinPolynomial2::unit(const Box2& box, int p, int i, int j)
{
    BernsteinPolynomial2 b{box, p, std::vector<double>(static_cast<std::size_t>((p + 1) * (p + 1)), 0.0)};
    b.coeffs[static_cast<std::size_t>(i * (p + 1) + j)] = 1.0;
    return b;
}

double BernsteinPolynomial2::operator()(const Vec2& x) const
{
    thread_local std::vector<double> bu, bv;
    bernstein_values(p, local(x.x, box.lo.x, box.hi.x), bu);
    bernstein_values(p, local(x.y, box.lo.y, box.hi.y), bv);
    double s = 0.0;
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= p; ++j) s += coeffs[static_cast<std::size_t>(i * (p + 1) + j)] * bu[i] * bv[j];
    return s;
}

double BernsteinPolynomial2::antiderivative_x(const Vec2& x) const
{
    thread_local std::vector<double> iu, bv;
    bernstein_integrals(p, local(x.x, box.lo.x, box.hi.x), iu);
    bernstein_values(p, local(x.y, box.lo.y, box.hi.y), bv);
    double s = 0.0;
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= p; ++j) s += coeffs[static_cast<std::size_t>(i * (p + 1) + j)] * iu[i] * bv[j];
    return s * (box.hi.x - box.lo.x);
}

Antiderivative2 BernsteinPolynomial2::antiderivative() const
{
    auto self = std::make_shared<const BernsteinPolynomial2>(*this);
    return {[self](const Vec2& x) { return (*self)(x); }, [self](const Vec2& x) { return self->antiderivative_x(x); },
            0};
}

BernsteinPolynomial3 BernsteinPolynomial3::unit(const Box3& box, int p, int i, int j, int k)
{
    const int q = p + 1;
    BernsteinPolynomial3 b{box, p, std::vector<double>(static_cast<std::size_t>(q * q * q), 0.0)};
    b.coeffs[static_cast<std::size_t>((i * q + j) * q + k)] = 1.0;
    return b;
}

double BernsteinPolynomial3::operator()(const Vec3& x) const
{
    thread_local std::vector<double> bu, bv, bw;
    bernstein_values(p, local(x.x, box.lo.x, box.hi.x), bu);
    bernstein_values(p, local(x.y, box.lo.y, box.hi.y), bv);
    bernstein_values(p, local(x.z, box.lo.z, box.hi.z), bw);
    const int q = p + 1;
    double s = 0.0;
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= p; ++j)
            for (int k = 0; k <= p; ++k)
                s += coeffs[static_cast<std::size_t>((i * q + j) * q + k)] * bu[i] * bv[j] * bw[k];
    return s;
}

double BernsteinPolynomial3::antiderivative_x(const Vec3& x) const
{
    thread_local std::vector<double> iu, bv, bw;
    bernstein_integrals(p, local(x.x, box.lo.x, box.hi.x), iu);
    bernstein_values(p, local(x.y, box.lo.y, box.hi.y), bv);
    bernstein_values(p, local(x.z, box.lo.z, box.hi.z), bw);
    const int q = p + 1;
    double s = 0.0;
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= p; ++j)
            for (int k = 0; k <= p; ++k)
                s += coeffs[static_cast<std::size_t>((i * q + j) * q + k)] * iu[i] * bv[j] * bw[k];
    return s * (box.hi.x - box.lo.x);
}

Antiderivative3 BernsteinPolynomial3::antiderivative() const
{
    auto self = std::make_shared<const BernsteinPolynomial3>(*this);
    return {[self](const Vec3& x) { return (*self)(x); }, [self](const Vec3& x) { return self->antiderivative_x(x); },
            0};
}

Antiderivative2 smooth_test_function_2d()
{
    return {[](const Vec2& x) { return std::exp(x.y) * std::sin(x.x) * std::cos(x.y); },
            [](const Vec2& x) { return -std::exp(x.y) * std::cos(x.x) * std::cos(x.y); }, 0};
}

Antiderivative3 smooth_test_function_3d()
{
    return {[](const Vec3& x) { return std::exp(x.y) * std::sin(x.x) * std::cos(x.y) * std::cos(x.z); },
            [](const Vec3& x) { return -std::exp(x.y) * std::cos(x.x) * std::cos(x.y) * std::cos(x.z); }, 0};
}

// ---------------------------------------------------------------- boundary integrals

double boundary_integral(const CurvedPolygon& region, const Antiderivative2& F, int n)
{
    const auto& rule = gauss_legendre(n);
    const double tiny = 1e-14 * std::max(region.bounding_box().diameter(), 1e-300);
    CompensatedSum s;
    for (std::size_t e = 0; e < region.size(); ++e) {
        for (const auto& piece : region.edges()[e].bezier_pieces()) {
            for (int q = 0; q < n; ++q) {
                Vec2 d;
                const Vec2 c = piece.eval(rule.nodes[static_cast<std::size_t>(q)], d);
                if (norm(d) <= tiny) {
                    std::ostringstream msg;
                    msg << "boundary_integral: vanishing tangent on edge " << e;
                    throw GeometryError(msg.str());
                }
                // Outward normal times |C'| for a counterclockwise loop is (y', -x').
                const double nx = F.axis == 0 ? d.y : -d.x;
                s.add(rule.weights[static_cast<std::size_t>(q)] * F.F1(c) * nx);
            }
        }
    }
    return s.value();
}

namespace {

// Parameter-space pieces of a trimmed face, each mapping [0,1]^2 onto part of the face with the
// face's own (outward) orientation.
std::vector<SurfacePatch> outward_patches(const ParametricFace& face)
{
    auto surface = std::make_shared<const TensorSurface>(face.surface);
    const auto& d = face.domain;
    bool unit = d.size() == 4;
    const Vec2 corners[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (std::size_t k = 0; unit && k < 4; ++k) {
        const auto& e = d.edges()[k];
        unit = e.degree() == 1 && !e.rational() && e.kind() != CurveKind::BSpline && e.start() == corners[k] &&
               e.end() == corners[(k + 1) % 4];
    }
    std::vector<SurfacePatch> out;
    if (unit) {
        out.emplace_back(surface, std::nullopt, false);
        return out;
    }
    for (auto& c : quad_dominant_split(d).cells) out.emplace_back(surface, std::move(c), false);
    return out;
}

template <class G>
double patch_integral(const SurfacePatch& patch, int n, const G& g)
{
    const auto& rule = gauss_legendre(n);
    CompensatedSum s;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec3 su, sv;
            const Vec3 x = patch.eval(rule.nodes[static_cast<std::size_t>(i)], rule.nodes[static_cast<std::size_t>(j)], su, sv);
            s.add(rule.weights[static_cast<std::size_t>(i)] * rule.weights[static_cast<std::size_t>(j)] * g(x, cross(su, sv)));
        }
    return s.value();
}

} // namespace

double boundary_integral(const CurvedPolyhedron& region, const Antiderivative3& F, int n)
{
    CompensatedSum s;
    for (const auto& face : region.faces())
        for (const auto& patch : outward_patches(face))
            s.add(patch_integral(patch, n, [&](const Vec3& x, const Vec3& nrm) { return F.F1(x) * nrm[F.axis]; }));
    return s.value();
}

double boundary_measure(const CurvedPolygon& region)
{
    return boundary_integral(region, {[](const Vec2&) { return 1.0; }, [](const Vec2& x) { return x.x; }, 0}, 32);
}

double boundary_measure(const CurvedPolyhedron& region, int axis, int n)
{
    return boundary_integral(region, {[](const Vec3&) { return 1.0; }, [axis](const Vec3& x) { return x[axis]; }, axis},
                             n);
}

Vec3 vector_area(const CurvedPolyhedron& region, int n)
{
    Vec3 a;
    for (int k = 0; k < 3; ++k)
        a[k] = boundary_integral(region, {[](const Vec3&) { return 0.0; }, [](const Vec3&) { return 1.0; }, k}, n);
    return a;
}

void require_outward_closed(const CurvedPolyhedron& region)
{
    if (region.empty()) throw GeometryError("polyhedron has no faces");
    for (const auto& f : region.faces()) f.require_valid();
    const Box3 box = region.bounding_box();
    const double d = std::max(box.diameter(), 1e-300);
    const Vec3 a = vector_area(region);
    if (norm(a) > 1e-6 * d * d) {
        std::ostringstream msg;
        msg << "polyhedron faces are not consistently oriented or not closed: vector area (" << a.x << ", " << a.y
            << ", " << a.z << ")";
        throw OrientationError(msg.str());
    }
    const double vx = boundary_measure(region, 0);
    const double vy = boundary_measure(region, 1);
    const double vz = boundary_measure(region, 2);
    const double tol = 1e-6 * d * d * d;
    if (!(vx > tol && vy > tol && vz > tol) || std::abs(vx - vy) > tol || std::abs(vx - vz) > tol) {
        std::ostringstream msg;
        msg << "polyhedron is not outward oriented: axis volumes " << vx << ", " << vy << ", " << vz;
        throw OrientationError(msg.str());
    }
}

// ---------------------------------------------------------------- signed counting

namespace {

bool solve(const Vec2& a, const Vec2& b, const Vec2& r, Vec2& x)
{
    const double det = cross(a, b);
    if (det == 0.0 || !std::isfinite(det)) return false;
    x = {cross(r, b) / det, cross(a, r) / det};
    return true;
}

bool solve(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& r, Vec3& x)
{
    const double det = det3(a, b, c);
    if (det == 0.0 || !std::isfinite(det)) return false;
    x = {det3(r, b, c) / det, det3(a, r, c) / det, det3(a, b, r) / det};
    return true;
}

template <class V>
V clamp01(V u)
{
    for (int i = 0; i < V::dim; ++i) u[i] = std::clamp(u[i], 0.0, 1.0);
    return u;
}

template <class Cell>
int count_cell(const Cell& cell, const typename Cell::Point& x, int m)
{
    using V = typename Cell::Param;
    const double scale = std::max(cell.bounding_box().diameter(), 1e-300);
    std::vector<V> roots;
    const int total = Cell::dim == 2 ? m * m : m * m * m;
    for (int s = 0; s < total; ++s) {
        V u;
        int rem = s;
        for (int k = Cell::dim - 1; k >= 0; --k) {
            u[k] = ((rem % m) + 0.5) / m;
            rem /= m;
        }
        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            V delta;
            bool ok;
            V r;
            if constexpr (Cell::dim == 2) {
                Vec2 tu, tv;
                r = cell.map(u, tu, tv) - x;
                if (norm(r) <= 1e-13 * scale) {
                    converged = true;
                    break;
                }
                ok = solve(tu, tv, r, delta);
            } else {
                Vec3 tu, tv, tw;
                r = cell.map(u, tu, tv, tw) - x;
                if (norm(r) <= 1e-13 * scale) {
                    converged = true;
                    break;
                }
                ok = solve(tu, tv, tw, r, delta);
            }
            if (!ok) break;
            u = clamp01(u - delta);
        }
        if (!converged) continue;
        const bool seen = std::any_of(roots.begin(), roots.end(), [&](const V& v) { return norm(v - u) < 1e-8; });
        if (!seen) roots.push_back(u);
    }
    int count = 0;
    for (const auto& u : roots) {
        const double j = cell.jacobian(u);
        count += (j > 0.0) - (j < 0.0);
    }
    return count;
}

// Closest distance from x to a map g: [0,1]^2 -> R^3, by sampling and projected Gauss-Newton.
template <class G>
double distance_to_map(const G& g, const Vec3& x)
{
    constexpr int k = 16;
    double best = std::numeric_limits<double>::infinity();
    Vec2 bu{};
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) {
            const Vec2 u{static_cast<double>(i) / k, static_cast<double>(j) / k};
            const double d = distance(g(u), x);
            if (d < best) {
                best = d;
                bu = u;
            }
        }
    Vec2 u = bu;
    const double h = 1e-7;
    for (int it = 0; it < 20; ++it) {
        const Vec3 p = g(u);
        const Vec3 a = (g(clamp01(Vec2{u.x + h, u.y})) - g(clamp01(Vec2{u.x - h, u.y}))) / (2 * h);
        const Vec3 b = (g(clamp01(Vec2{u.x, u.y + h})) - g(clamp01(Vec2{u.x, u.y - h}))) / (2 * h);
        const Vec3 r = p - x;
        const double aa = dot(a, a), ab = dot(a, b), bb = dot(b, b);
        const double det = aa * bb - ab * ab;
        if (!(det > 0.0)) break;
        const double ra = dot(r, a), rb = dot(r, b);
        const Vec2 next = clamp01(Vec2{u.x - (bb * ra - ab * rb) / det, u.y - (aa * rb - ab * ra) / det});
        if (norm(next - u) < 1e-15) break;
        u = next;
    }
    return std::min(best, distance(g(u), x));
}

} // namespace

int signed_count(const Vec2& x, const Decomposition2D& d, int multistart)
{
    int c = 0;
    for (const auto& cell : d.cells) c += count_cell(cell, x, multistart);
    return c;
}

int signed_count(const Vec3& x, const Decomposition3D& d, int multistart)
{
    int c = 0;
    for (const auto& cell : d.cells) c += count_cell(cell, x, multistart);
    return c;
}

double distance_to_cell_boundaries(const Vec2& x, const Decomposition2D& d)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cell : d.cells)
        for (const auto& e : cell.loop()) best = std::min(best, distance_to_curve(e, x));
    return best;
}

double distance_to_cell_boundaries(const Vec3& x, const Decomposition3D& d)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cell : d.cells) {
        const auto& B = cell.base();
        const Vec3 V = cell.apex();
        best = std::min(best, distance_to_map([&](const Vec2& u) { return B.eval(u.x, u.y); }, x));
        best = std::min(best, distance_to_map([&](const Vec2& u) { return (1 - u.y) * B.eval(u.x, 0.0) + u.y * V; }, x));
        best = std::min(best, distance_to_map([&](const Vec2& u) { return (1 - u.y) * B.eval(u.x, 1.0) + u.y * V; }, x));
        best = std::min(best, distance_to_map([&](const Vec2& u) { return (1 - u.y) * B.eval(0.0, u.x) + u.y * V; }, x));
        best = std::min(best, distance_to_map([&](const Vec2& u) { return (1 - u.y) * B.eval(1.0, u.x) + u.y * V; }, x));
    }
    return best;
}

// ---------------------------------------------------------------- dense reference

namespace {

struct H2 {
    double x, y, w;
};

using HCurve = std::vector<H2>;

HCurve to_h(const ParametricCurve& c)
{
    const auto f = forward_bezier(c);
    HCurve h;
    for (std::size_t i = 0; i < f.control_points().size(); ++i) {
        const double w = f.rational() ? f.weights()[i] : 1.0;
        h.push_back({f.control_points()[i].x * w, f.control_points()[i].y * w, w});
    }
    return h;
}

Box2 hbox(const HCurve& h)
{
    Box2 b;
    for (const auto& q : h) b.add(Vec2{q.x / q.w, q.y / q.w});
    return b;
}

void split_h(const HCurve& p, HCurve& left, HCurve& right)
{
    const std::size_t n = p.size();
    HCurve w = p;
    left.resize(n);
    right.resize(n);
    left[0] = w[0];
    right[n - 1] = w[n - 1];
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t i = 0; i + r < n; ++i)
            w[i] = {0.5 * (w[i].x + w[i + 1].x), 0.5 * (w[i].y + w[i + 1].y), 0.5 * (w[i].w + w[i + 1].w)};
        left[r] = w[0];
        right[n - 1 - r] = w[n - 1 - r];
    }
}

// Open-interior overlap: a boundary lying on a face of the query box does not cross it.
template <class B>
bool open_overlap(const B& a, const B& q)
{
    for (int i = 0; i < std::remove_cvref_t<decltype(a.lo)>::dim; ++i)
        if (!(a.hi[i] > q.lo[i] && a.lo[i] < q.hi[i])) {
            // Zero-extent boxes strictly inside the query still cross it.
            if (!(a.lo[i] == a.hi[i] && a.lo[i] > q.lo[i] && a.lo[i] < q.hi[i])) return false;
        }
    return true;
}

template <class B>
double min_side(const B& b)
{
    double s = std::numeric_limits<double>::infinity();
    for (int i = 0; i < std::remove_cvref_t<decltype(b.lo)>::dim; ++i) s = std::min(s, b.hi[i] - b.lo[i]);
    return s;
}

bool curve_crosses(const HCurve& h, const Box2& q, int depth)
{
    const Box2 b = hbox(h);
    if (!open_overlap(b, q)) return false;
    if (depth > 50 || b.diameter() <= 0.25 * min_side(q)) return true;
    HCurve l, r;
    split_h(h, l, r);
    return curve_crosses(l, q, depth + 1) || curve_crosses(r, q, depth + 1);
}

struct SurfacePiece {
    std::shared_ptr<const SurfacePatch> patch;
    double u0, u1, v0, v1;
};

Box3 piece_box(const SurfacePiece& s)
{
    Box3 b;
    Vec3 p[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            p[i][j] = s.patch->eval(s.u0 + 0.5 * i * (s.u1 - s.u0), s.v0 + 0.5 * j * (s.v1 - s.v0));
            b.add(p[i][j]);
        }
    // Pad by the deviation of the centre and edge midpoints from bilinear interpolation.
    Vec3 dev{};
    auto acc = [&](const Vec3& a, const Vec3& lin) {
        for (int k = 0; k < 3; ++k) dev[k] = std::max(dev[k], std::abs(a[k] - lin[k]));
    };
    acc(p[1][1], 0.25 * (p[0][0] + p[2][0] + p[0][2] + p[2][2]));
    acc(p[1][0], 0.5 * (p[0][0] + p[2][0]));
    acc(p[1][2], 0.5 * (p[0][2] + p[2][2]));
    acc(p[0][1], 0.5 * (p[0][0] + p[0][2]));
    acc(p[2][1], 0.5 * (p[2][0] + p[2][2]));
    for (int k = 0; k < 3; ++k) {
        const double pad = 2.0 * dev[k] + 0.25 * (b.hi[k] - b.lo[k]);
        b.lo[k] -= pad;
        b.hi[k] += pad;
    }
    return b;
}

bool surface_crosses(const SurfacePiece& s, const Box3& q, int depth)
{
    const Box3 b = piece_box(s);
    if (!open_overlap(b, q)) return false;
    if (depth > 24 || b.diameter() <= 0.25 * min_side(q)) return true;
    const double um = 0.5 * (s.u0 + s.u1);
    const double vm = 0.5 * (s.v0 + s.v1);
    return surface_crosses({s.patch, s.u0, um, s.v0, vm}, q, depth + 1) ||
           surface_crosses({s.patch, um, s.u1, s.v0, vm}, q, depth + 1) ||
           surface_crosses({s.patch, s.u0, um, vm, s.v1}, q, depth + 1) ||
           surface_crosses({s.patch, um, s.u1, vm, s.v1}, q, depth + 1);
}

template <class Region, class F, class B>
double refine_box(const Region& region, const F& f, const B& box, int level, int depth, int n)
{
    using V = std::remove_cvref_t<decltype(box.lo)>;
    constexpr int d = V::dim;
    if (!region.may_cross(box)) {
        if (!region.inside(box.center())) return 0.0;
        const auto& r = gauss_legendre(n);
        CompensatedSum s;
        const int total = d == 2 ? n * n : n * n * n;
        for (int q = 0; q < total; ++q) {
            V x;
            double w = box.measure();
            int rem = q;
            for (int k = d - 1; k >= 0; --k) {
                const auto i = static_cast<std::size_t>(rem % n);
                rem /= n;
                x[k] = box.lo[k] + r.nodes[i] * (box.hi[k] - box.lo[k]);
                w *= r.weights[i];
            }
            s.add(w * f(x));
        }
        return s.value();
    }
    if (level >= depth) {
        const V c = box.center();
        return region.inside(c) ? f(c) * box.measure() : 0.0;
    }
    CompensatedSum s;
    const V c = box.center();
    for (int corner = 0; corner < (1 << d); ++corner) {
        B child;
        child.empty = false;
        for (int k = 0; k < d; ++k) {
            const bool upper = (corner >> k) & 1;
            child.lo[k] = upper ? c[k] : box.lo[k];
            child.hi[k] = upper ? box.hi[k] : c[k];
        }
        s.add(refine_box(region, f, child, level + 1, depth, n));
    }
    return s.value();
}

template <class Region, class F>
double dense(const Region& region, const F& f, int m, int depth, int n, int jobs)
{
    using B = decltype(region.box);
    using V = std::remove_cvref_t<decltype(region.box.lo)>;
    constexpr int d = V::dim;
    if (m < 1) throw std::invalid_argument("dense_reference: m must be >= 1");
    const std::size_t total = d == 2 ? static_cast<std::size_t>(m * m) : static_cast<std::size_t>(m * m * m);
    std::vector<double> parts(total);
    parallel_for(
        total,
        [&](std::size_t idx) {
            B box;
            box.empty = false;
            std::size_t rem = idx;
            for (int k = d - 1; k >= 0; --k) {
                const auto i = static_cast<double>(rem % static_cast<std::size_t>(m));
                rem /= static_cast<std::size_t>(m);
                const double h = (region.box.hi[k] - region.box.lo[k]) / m;
                box.lo[k] = region.box.lo[k] + i * h;
                box.hi[k] = i + 1 == m ? region.box.hi[k] : region.box.lo[k] + (i + 1) * h;
            }
            parts[idx] = refine_box(region, f, box, 0, depth, n);
        },
        jobs);
    CompensatedSum s;
    for (double p : parts) s.add(p);
    return s.value();
}

} // namespace

DenseRegion2D dense_region(const CurvedPolygon& polygon)
{
    auto poly = std::make_shared<const CurvedPolygon>(polygon);
    auto pieces = std::make_shared<std::vector<HCurve>>();
    for (const auto& e : polygon.edges())
        for (const auto& p : e.bezier_pieces()) pieces->push_back(to_h(p));
    DenseRegion2D r;
    r.box = polygon.bounding_box();
    r.inside = [poly](const Vec2& x) {
        const double w = winding_number(*poly, x);
        return !std::isnan(w) && std::abs(w) > 0.5;
    };
    r.may_cross = [pieces](const Box2& q) {
        return std::any_of(pieces->begin(), pieces->end(), [&](const HCurve& h) { return curve_crosses(h, q, 0); });
    };
    return r;
}

DenseRegion3D dense_region(const CurvedPolyhedron& brep)
{
    auto shape = std::make_shared<const CurvedPolyhedron>(brep);
    auto pieces = std::make_shared<std::vector<SurfacePiece>>();
    for (const auto& f : brep.faces())
        for (auto& p : outward_patches(f))
            pieces->push_back({std::make_shared<const SurfacePatch>(std::move(p)), 0.0, 1.0, 0.0, 1.0});
    DenseRegion3D r;
    r.box = brep.bounding_box();
    r.inside = [shape](const Vec3& x) { return std::abs(generalized_winding_number(*shape, x)) > 0.5; };
    r.may_cross = [pieces](const Box3& q) {
        return std::any_of(pieces->begin(), pieces->end(), [&](const SurfacePiece& s) { return surface_crosses(s, q, 0); });
    };
    return r;
}

double dense_reference(const DenseRegion2D& region, const Field2& f, int m, int depth, int n, int jobs)
{
    return dense(region, f, m, depth, n, jobs);
}

double dense_reference(const DenseRegion3D& region, const Field3& f, int m, int depth, int n, int jobs)
{
    return dense(region, f, m, depth, n, jobs);
}

// ---------------------------------------------------------------- generalized winding number

namespace {

double solid_angle(const SurfacePatch& patch, const Vec3& x, double u0, double u1, double v0, double v1, int depth)
{
    const Vec3 c = patch.eval(0.5 * (u0 + u1), 0.5 * (v0 + v1));
    double diam = 0.0;
    for (double u : {u0, u1})
        for (double v : {v0, v1}) diam = std::max(diam, 2.0 * distance(patch.eval(u, v), c));
    if (depth < 14 && distance(c, x) < 2.0 * diam) {
        const double um = 0.5 * (u0 + u1);
        const double vm = 0.5 * (v0 + v1);
        return solid_angle(patch, x, u0, um, v0, vm, depth + 1) + solid_angle(patch, x, um, u1, v0, vm, depth + 1) +
               solid_angle(patch, x, u0, um, vm, v1, depth + 1) + solid_angle(patch, x, um, u1, vm, v1, depth + 1);
    }
    constexpr int n = 8;
    const auto& r = gauss_legendre(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double u = u0 + r.nodes[static_cast<std::size_t>(i)] * (u1 - u0);
            const double v = v0 + r.nodes[static_cast<std::size_t>(j)] * (v1 - v0);
            Vec3 su, sv;
            const Vec3 d = patch.eval(u, v, su, sv) - x;
            const double len = norm(d);
            if (len == 0.0) continue;
            s += r.weights[static_cast<std::size_t>(i)] * r.weights[static_cast<std::size_t>(j)] * dot(d, cross(su, sv)) /
                 (len * len * len);
        }
    return s * (u1 - u0) * (v1 - v0);
}

} // namespace

double generalized_winding_number(const CurvedPolyhedron& brep, const Vec3& x)
{
    double total = 0.0;
    for (const auto& f : brep.faces())
        for (const auto& p : outward_patches(f)) total += solid_angle(p, x, 0.0, 1.0, 0.0, 1.0, 0);
    return total / (4.0 * std::numbers::pi);
}

} // namespace foldquad
