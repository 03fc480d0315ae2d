#include "foldquad/intersect.hpp"

#include "foldquad/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace foldquad {

namespace {

double casteljau(const std::vector<double>& b, double t)
{
    thread_local std::vector<double> w;
    w = b;
    for (std::size_t r = 1; r < w.size(); ++r)
        for (std::size_t i = 0; i + r < w.size(); ++i) w[i] = (1.0 - t) * w[i] + t * w[i + 1];
    return w[0];
}

void split(const std::vector<double>& b, std::vector<double>& left, std::vector<double>& right)
{
    const std::size_t n = b.size();
    std::vector<double> w = b;
    left.resize(n);
    right.resize(n);
    left[0] = w[0];
    right[n - 1] = w[n - 1];
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t i = 0; i + r < n; ++i) w[i] = 0.5 * (w[i] + w[i + 1]);
        left[r] = w[0];
        right[n - 1 - r] = w[n - 1 - r];
    }
}

int variations(const std::vector<double>& b)
{
    int v = 0;
    int last = 0;
    for (double x : b) {
        const int s = (x > 0.0) - (x < 0.0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

double first_nonzero(const std::vector<double>& b, bool from_back)
{
    for (std::size_t k = 0; k < b.size(); ++k) {
        const double c = from_back ? b[b.size() - 1 - k] : b[k];
        if (c != 0.0) return c;
    }
    return 0.0;
}

// The single root of the full polynomial inside (a, z), given the local coefficients `local`.
// A vanishing end value is replaced by the first nonzero local coefficient, which has the sign
// of the polynomial just inside the interval.
double refine(const std::vector<double>& b, const std::vector<double>& local, double a, double z)
{
    double fa = casteljau(b, a);
    double fz = casteljau(b, z);
    if (fa == 0.0) fa = first_nonzero(local, false);
    if (fz == 0.0) fz = first_nonzero(local, true);
    if ((fa > 0) == (fz > 0)) return 0.5 * (a + z);
    int side = 0;
    for (int it = 0; it < 200 && z - a > 4 * std::numeric_limits<double>::epsilon(); ++it) {
        // Illinois regula falsi, falling back to bisection when it stalls.
        double t = (a * fz - z * fa) / (fz - fa);
        if (!(t > a && t < z) || it % 8 == 7) t = 0.5 * (a + z);
        const double ft = casteljau(b, t);
        if (ft == 0.0) return t;
        if ((ft > 0) == (fz > 0)) {
            z = t;
            fz = ft;
            if (side == -1) fa *= 0.5;
            side = -1;
        } else {
            a = t;
            fa = ft;
            if (side == 1) fz *= 0.5;
            side = 1;
        }
    }
    return std::abs(fa) < std::abs(fz) ? a : z;
}

void isolate(const std::vector<double>& full, const std::vector<double>& b, double a, double z, double tol,
             int depth, std::vector<double>& out)
{
    const int v = variations(b);
    if (v == 0) return;
    if (v == 1) {
        out.push_back(refine(full, b, a, z));
        return;
    }
    const double m = 0.5 * (a + z);
    if (z - a < 1e-12 || depth > 60) {
        // Clustered or tangential roots: keep one representative.
        if (std::abs(casteljau(full, m)) <= tol) out.push_back(m);
        return;
    }
    std::vector<double> left;
    std::vector<double> right;
    split(b, left, right);
    if (std::abs(left.back()) <= tol) out.push_back(m);
    isolate(full, left, a, m, tol, depth + 1, out);
    isolate(full, right, m, z, tol, depth + 1, out);
}

struct H2 {
    double x, y, w;
};

std::vector<H2> homog(const ParametricCurve& c)
{
    std::vector<H2> h;
    const auto& p = c.control_points();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double w = c.rational() ? c.weights()[i] : 1.0;
        h.push_back({p[i].x * w, p[i].y * w, w});
    }
    return h;
}

void split_h(const std::vector<H2>& p, std::vector<H2>& left, std::vector<H2>& right)
{
    const std::size_t n = p.size();
    std::vector<H2> w = p;
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

// Signed angle swept by the piece around p; NaN if p is on it.
double sweep(const std::vector<H2>& h, Vec2 p, double scale, int depth)
{
    const Vec2 a{h.front().x / h.front().w - p.x, h.front().y / h.front().w - p.y};
    const Vec2 z{h.back().x / h.back().w - p.x, h.back().y / h.back().w - p.y};
    // Angles of all control vectors relative to the first one.
    double lo = 0.0;
    double hi = 0.0;
    bool ok = norm(a) > 0.0;
    for (std::size_t i = 1; ok && i < h.size(); ++i) {
        const Vec2 d{h[i].x / h[i].w - p.x, h[i].y / h[i].w - p.y};
        if (norm(d) == 0.0) {
            ok = false;
            break;
        }
        const double ang = std::atan2(cross(a, d), dot(a, d));
        lo = std::min(lo, ang);
        hi = std::max(hi, ang);
    }
    if (ok && hi - lo < 0.9 * std::numbers::pi) return std::atan2(cross(a, z), dot(a, z));
    if (depth > 60) {
        Box2 box;
        for (const auto& q : h) box.add(Vec2{q.x / q.w, q.y / q.w});
        if (box.diameter() <= 1e-14 * scale) return std::numeric_limits<double>::quiet_NaN();
    }
    if (depth > 200) return std::numeric_limits<double>::quiet_NaN();
    std::vector<H2> left;
    std::vector<H2> right;
    split_h(h, left, right);
    return sweep(left, p, scale, depth + 1) + sweep(right, p, scale, depth + 1);
}

} // namespace

std::vector<double> bernstein_roots(const std::vector<double>& coeffs)
{
    std::vector<double> out;
    if (coeffs.empty()) return out;
    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return out;
    const double tol = 1e-15 * scale;
    if (std::abs(coeffs.front()) <= tol) out.push_back(0.0);
    if (std::abs(coeffs.back()) <= tol) out.push_back(1.0);
    isolate(coeffs, coeffs, 0.0, 1.0, tol, 0, out);
    std::sort(out.begin(), out.end());
    std::vector<double> dedup;
    for (double t : out)
        if (dedup.empty() || t - dedup.back() > 1e-13) dedup.push_back(t);
    return dedup;
}

ParametricCurve forward_bezier(const ParametricCurve& curve)
{
    if (curve.kind() == CurveKind::BSpline) throw GeometryError("expected a Bezier curve; extract pieces first");
    return curve.reversed() ? curve.subcurve(0.0, 1.0) : curve;
}

std::vector<double> curve_line_params(const ParametricCurve& curve, int axis, double c)
{
    const auto f = forward_bezier(curve);
    const auto& p = f.control_points();
    std::vector<double> b(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) b[i] = (f.rational() ? f.weights()[i] : 1.0) * (p[i][axis] - c);
    auto t = bernstein_roots(b);
    if (curve.reversed()) {
        for (double& x : t) x = 1.0 - x;
        std::reverse(t.begin(), t.end());
    }
    return t;
}

double winding_number(const CurvedPolygon& loop, Vec2 p)
{
    const double scale = std::max(loop.bounding_box().diameter(), 1e-300);
    double total = 0.0;
    for (const auto& e : loop.edges()) {
        for (const auto& piece : e.bezier_pieces()) {
            const double s = sweep(homog(forward_bezier(piece)), p, scale, 0);
            if (std::isnan(s)) return s;
            total += s;
        }
    }
    return total / (2.0 * std::numbers::pi);
}

double distance_to_curve(const ParametricCurve& curve, Vec2 p)
{
    constexpr int samples = 64;
    double best_t = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= samples; ++k) {
        const double t = static_cast<double>(k) / samples;
        const double d = distance(curve.eval(t), p);
        if (d < best) {
            best = d;
            best_t = t;
        }
    }
    // Newton on g(t) = (C(t) - p) . C'(t) with a finite-difference g'.
    double t = best_t;
    for (int it = 0; it < 30; ++it) {
        Vec2 d;
        const Vec2 c = curve.eval(t, d);
        const double g = dot(c - p, d);
        const double h = 1e-7;
        const double tp = std::min(1.0, t + h);
        const double tm = std::max(0.0, t - h);
        Vec2 dp, dm;
        const double gp = dot(curve.eval(tp, dp) - p, dp);
        const double gm = dot(curve.eval(tm, dm) - p, dm);
        const double dg = (gp - gm) / (tp - tm);
        if (dg <= 0.0) break;
        const double next = std::clamp(t - g / dg, 0.0, 1.0);
        if (std::abs(next - t) < 1e-15) break;
        t = next;
    }
    return std::min(best, distance(curve.eval(t), p));
}

} // namespace foldquad
