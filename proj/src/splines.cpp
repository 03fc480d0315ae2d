#include "foldquad/splines.hpp"

#include "foldquad/errors.hpp"

#include <Eigen/Dense>

#include <cassert>
#include <numbers>
#include <stdexcept>
#include <string>

namespace foldquad {

std::string_view to_string(CurveKind kind)
{
    switch (kind) {
    case CurveKind::Bezier: return "bezier";
    case CurveKind::RationalBezier: return "rational_bezier";
    case CurveKind::BSpline: return "bspline";
    }
    return "bezier";
}

CurveKind curve_kind_from_string(std::string_view name)
{
    if (name == "bezier") return CurveKind::Bezier;
    if (name == "rational_bezier") return CurveKind::RationalBezier;
    if (name == "bspline") return CurveKind::BSpline;
    throw SchemaError("unknown curve kind '" + std::string(name) + "'");
}

double checked_param(double t)
{
    if (!(t >= -kParamTol && t <= 1.0 + kParamTol))
        throw std::domain_error("parameter " + std::to_string(t) + " outside [0,1]");
    return std::clamp(t, 0.0, 1.0);
}

namespace basis {

void bernstein(int p, double t, std::span<double> out)
{
    assert(static_cast<int>(out.size()) >= p + 1);
    const double s = 1.0 - t;
    out[0] = 1.0;
    for (int k = 1; k <= p; ++k) {
        out[k] = t * out[k - 1];
        for (int j = k - 1; j >= 1; --j) out[j] = s * out[j] + t * out[j - 1];
        out[0] = s * out[0];
    }
}

void bernstein_with_derivative(int p, double t, std::span<double> val, std::span<double> der)
{
    if (p == 0) {
        val[0] = 1.0;
        der[0] = 0.0;
        return;
    }
    // Degree p-1 values first; the derivative is p * (B_{i-1}^{p-1} - B_i^{p-1}).
    bernstein(p - 1, t, val);
    for (int i = 0; i <= p; ++i) {
        const double left = i > 0 ? val[i - 1] : 0.0;
        const double right = i < p ? val[i] : 0.0;
        der[i] = p * (left - right);
    }
    bernstein(p, t, val);
}

namespace {

int find_span(int p, std::span<const double> knots, int n, double t)
{
    // Last control index n-1; valid spans are p..n-1.
    if (t >= knots[n]) {
        int k = n - 1;
        while (k > p && knots[k] == knots[k + 1]) --k;
        return k;
    }
    if (t <= knots[p]) {
        int k = p;
        while (k < n - 1 && knots[k] == knots[k + 1]) ++k;
        return k;
    }
    int lo = p;
    int hi = n;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        if (t < knots[mid]) hi = mid;
        else lo = mid;
    }
    return lo;
}

// Nonzero basis functions N_{span-p..span, p} (NURBS book A2.2).
void basis_funs(int span, double t, int p, std::span<const double> knots, double* out)
{
    double left[64];
    double right[64];
    out[0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = t - knots[span + 1 - j];
        right[j] = knots[span + j] - t;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double denom = right[r + 1] + left[j - r];
            const double temp = denom != 0.0 ? out[r] / denom : 0.0;
            out[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        out[j] = saved;
    }
}

} // namespace

void bspline_with_derivative(int p, std::span<const double> knots, double t, std::span<double> val,
                             std::span<double> der)
{
    const int n = static_cast<int>(knots.size()) - p - 1;
    if (p >= 63) throw GeometryError("B-spline degree too large");
    std::fill(val.begin(), val.begin() + n, 0.0);
    std::fill(der.begin(), der.begin() + n, 0.0);
    const int span = find_span(p, knots, n, t);
    double vp[64];
    basis_funs(span, t, p, knots, vp);
    for (int r = 0; r <= p; ++r) val[span - p + r] = vp[r];
    if (p == 0) return;
    double vq[64];
    basis_funs(span, t, p - 1, knots, vq);
    // vq[r] = N_{span-p+1+r, p-1}
    for (int r = 0; r <= p; ++r) {
        const int i = span - p + r;
        double d = 0.0;
        const double a = knots[i + p] - knots[i];
        if (r >= 1 && a > 0.0) d += vq[r - 1] / a;
        const double b = knots[i + p + 1] - knots[i + 1];
        if (r <= p - 1 && b > 0.0) d -= vq[r] / b;
        der[i] = p * d;
    }
}

} // namespace basis

namespace {

struct Homog2 {
    double x, y, w;
};

std::vector<Homog2> to_homog(const std::vector<Vec2>& ctrl, const std::vector<double>& w)
{
    std::vector<Homog2> h(ctrl.size());
    for (std::size_t i = 0; i < ctrl.size(); ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        h[i] = {ctrl[i].x * wi, ctrl[i].y * wi, wi};
    }
    return h;
}

void from_homog(const std::vector<Homog2>& h, bool rational, std::vector<Vec2>& ctrl, std::vector<double>& w)
{
    ctrl.resize(h.size());
    w.clear();
    if (rational) w.resize(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        ctrl[i] = {h[i].x / h[i].w, h[i].y / h[i].w};
        if (rational) w[i] = h[i].w;
    }
}

// de Casteljau split at s; returns left and right control polygons.
void split_homog(const std::vector<Homog2>& p, double s, std::vector<Homog2>* left, std::vector<Homog2>* right)
{
    std::vector<Homog2> work = p;
    const std::size_t n = p.size();
    if (left) left->assign(n, {});
    if (right) right->assign(n, {});
    for (std::size_t k = 0; k < n; ++k) {
        if (left) (*left)[k] = work[0];
        if (right) (*right)[n - 1 - k] = work[n - 1 - k];
        for (std::size_t i = 0; i + 1 < n - k; ++i) {
            work[i].x = (1.0 - s) * work[i].x + s * work[i + 1].x;
            work[i].y = (1.0 - s) * work[i].y + s * work[i + 1].y;
            work[i].w = (1.0 - s) * work[i].w + s * work[i + 1].w;
        }
    }
}

void normalize_knots(std::vector<double>& knots)
{
    const double a = knots.front();
    const double b = knots.back();
    if (!(b > a)) throw GeometryError("B-spline knot vector has zero length");
    if (a == 0.0 && b == 1.0) return;
    for (double& k : knots) k = (k - a) / (b - a);
    knots.front() = 0.0;
    knots.back() = 1.0;
}

void check_clamped(int p, const std::vector<double>& knots, std::size_t ncp, const char* what)
{
    if (p < 1) throw GeometryError(std::string(what) + ": degree must be >= 1");
    if (knots.size() != ncp + static_cast<std::size_t>(p) + 1)
        throw GeometryError(std::string(what) + ": #control points must equal #knots - degree - 1");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (knots[i] < knots[i - 1]) throw GeometryError(std::string(what) + ": knots must be nondecreasing");
    for (int i = 1; i <= p; ++i) {
        if (knots[static_cast<std::size_t>(i)] != knots.front() ||
            knots[knots.size() - 1 - static_cast<std::size_t>(i)] != knots.back())
            throw GeometryError(std::string(what) + ": knot vector must be clamped");
    }
}

} // namespace

// ---------------------------------------------------------------- ParametricCurve

ParametricCurve ParametricCurve::bezier(std::vector<Vec2> ctrl)
{
    ParametricCurve c;
    c.kind_ = CurveKind::Bezier;
    c.degree_ = static_cast<int>(ctrl.size()) - 1;
    c.ctrl_ = std::move(ctrl);
    c.validate();
    return c;
}

ParametricCurve ParametricCurve::rational_bezier(std::vector<Vec2> ctrl, std::vector<double> weights)
{
    ParametricCurve c;
    c.kind_ = CurveKind::RationalBezier;
    c.degree_ = static_cast<int>(ctrl.size()) - 1;
    c.ctrl_ = std::move(ctrl);
    c.weights_ = std::move(weights);
    c.validate();
    return c;
}

ParametricCurve ParametricCurve::bspline(int degree, std::vector<double> knots, std::vector<Vec2> ctrl)
{
    ParametricCurve c;
    c.kind_ = CurveKind::BSpline;
    c.degree_ = degree;
    check_clamped(degree, knots, ctrl.size(), "bspline curve");
    normalize_knots(knots);
    c.knots_ = std::move(knots);
    c.ctrl_ = std::move(ctrl);
    c.validate();
    return c;
}

ParametricCurve ParametricCurve::line(Vec2 a, Vec2 b) { return bezier({a, b}); }

ParametricCurve ParametricCurve::point(Vec2 p) { return bezier({p, p}); }

void ParametricCurve::validate() const
{
    if (degree_ < 1) throw GeometryError("curve degree must be >= 1");
    for (const auto& p : ctrl_)
        if (!is_finite(p)) throw GeometryError("curve control point is not finite");
    switch (kind_) {
    case CurveKind::Bezier:
        if (static_cast<int>(ctrl_.size()) != degree_ + 1) throw GeometryError("bezier: #control points != degree+1");
        break;
    case CurveKind::RationalBezier:
        if (static_cast<int>(ctrl_.size()) != degree_ + 1)
            throw GeometryError("rational bezier: #control points != degree+1");
        if (weights_.size() != ctrl_.size()) throw GeometryError("rational bezier: #weights != #control points");
        for (double w : weights_)
            if (!(w > 0.0)) throw GeometryError("rational bezier: weights must be positive");
        break;
    case CurveKind::BSpline:
        check_clamped(degree_, knots_, ctrl_.size(), "bspline curve");
        break;
    }
}

void ParametricCurve::eval_basis(double s, std::vector<double>& val, std::vector<double>& der) const
{
    const std::size_t n = ctrl_.size();
    val.resize(n);
    der.resize(n);
    if (kind_ == CurveKind::BSpline) basis::bspline_with_derivative(degree_, knots_, s, val, der);
    else basis::bernstein_with_derivative(degree_, s, val, der);
}

Vec2 ParametricCurve::eval(double t) const
{
    Vec2 d;
    return eval(t, d);
}

Vec2 ParametricCurve::derivative(double t) const
{
    Vec2 d;
    eval(t, d);
    return d;
}

Vec2 ParametricCurve::eval(double t, Vec2& d) const
{
    const double s = canonical(checked_param(t));
    thread_local std::vector<double> val;
    thread_local std::vector<double> der;
    eval_basis(s, val, der);
    Vec2 a{};
    Vec2 da{};
    double w = 0.0;
    double dw = 0.0;
    for (std::size_t i = 0; i < ctrl_.size(); ++i) {
        const double wi = weights_.empty() ? 1.0 : weights_[i];
        a += (val[i] * wi) * ctrl_[i];
        da += (der[i] * wi) * ctrl_[i];
        w += val[i] * wi;
        dw += der[i] * wi;
    }
    const Vec2 c = a / w;
    d = (da - dw * c) / w;
    if (reversed_) d = -d;
    return c;
}

ParametricCurve ParametricCurve::reverse() const
{
    ParametricCurve c = *this;
    c.reversed_ = !reversed_;
    return c;
}

std::vector<ParametricCurve> ParametricCurve::bezier_pieces() const
{
    std::vector<ParametricCurve> pieces;
    if (kind_ != CurveKind::BSpline) {
        ParametricCurve c = *this;
        if (reversed_) {
            std::reverse(c.ctrl_.begin(), c.ctrl_.end());
            std::reverse(c.weights_.begin(), c.weights_.end());
            c.reversed_ = false;
        }
        pieces.push_back(std::move(c));
        return pieces;
    }
    // Boehm knot insertion until every interior knot has multiplicity p.
    const int p = degree_;
    std::vector<double> knots = knots_;
    std::vector<Vec2> ctrl = ctrl_;
    std::size_t i = static_cast<std::size_t>(p) + 1;
    while (i < knots.size() - static_cast<std::size_t>(p) - 1) {
        const double u = knots[i];
        std::size_t mult = 1;
        while (i + mult < knots.size() && knots[i + mult] == u) ++mult;
        for (std::size_t r = mult; r < static_cast<std::size_t>(p); ++r) {
            // Insert u once; span k with knots[k] <= u < knots[k+1] is the last index holding u.
            const std::size_t k = i + r - 1;
            std::vector<Vec2> next(ctrl.size() + 1);
            for (std::size_t j = 0; j <= k - static_cast<std::size_t>(p); ++j) next[j] = ctrl[j];
            for (std::size_t j = k - static_cast<std::size_t>(p) + 1; j <= k - r; ++j) {
                const double alpha = (u - knots[j]) / (knots[j + static_cast<std::size_t>(p)] - knots[j]);
                next[j] = alpha * ctrl[j] + (1.0 - alpha) * ctrl[j - 1];
            }
            for (std::size_t j = k - r; j < ctrl.size(); ++j) next[j + 1] = ctrl[j];
            ctrl = std::move(next);
            knots.insert(knots.begin() + static_cast<std::ptrdiff_t>(k) + 1, u);
        }
        i += static_cast<std::size_t>(p);
    }
    const std::size_t npieces = (ctrl.size() - 1) / static_cast<std::size_t>(p);
    for (std::size_t s = 0; s < npieces; ++s) {
        std::vector<Vec2> seg(ctrl.begin() + static_cast<std::ptrdiff_t>(s * p),
                              ctrl.begin() + static_cast<std::ptrdiff_t>(s * p + p + 1));
        pieces.push_back(bezier(std::move(seg)));
    }
    if (reversed_) {
        std::reverse(pieces.begin(), pieces.end());
        for (auto& piece : pieces) piece = piece.reverse().bezier_pieces().front();
    }
    return pieces;
}

ParametricCurve ParametricCurve::subcurve(double a, double b) const
{
    if (kind_ == CurveKind::BSpline) throw GeometryError("subcurve requires a Bezier curve; extract pieces first");
    a = checked_param(a);
    b = checked_param(b);
    if (!(a < b)) throw GeometryError("subcurve requires a < b");
    double s0 = a;
    double s1 = b;
    if (reversed_) {
        s0 = 1.0 - b;
        s1 = 1.0 - a;
    }
    auto h = to_homog(ctrl_, weights_);
    std::vector<Homog2> left;
    std::vector<Homog2> right;
    split_homog(h, s1, &left, nullptr);
    split_homog(left, s0 / s1, nullptr, &right);
    if (reversed_) std::reverse(right.begin(), right.end());
    ParametricCurve c = *this;
    c.reversed_ = false;
    from_homog(right, rational(), c.ctrl_, c.weights_);
    // Pin end points to the exact evaluations so neighbouring fragments stay watertight.
    c.ctrl_.front() = eval(a);
    c.ctrl_.back() = eval(b);
    return c;
}

ParametricCurve ParametricCurve::elevate(int target_degree) const
{
    if (kind_ == CurveKind::BSpline) throw GeometryError("degree elevation requires a Bezier curve");
    if (target_degree < degree_) throw GeometryError("cannot elevate to a lower degree");
    auto h = to_homog(ctrl_, weights_);
    for (int p = degree_; p < target_degree; ++p) {
        std::vector<Homog2> next(static_cast<std::size_t>(p) + 2);
        next.front() = h.front();
        next.back() = h.back();
        for (int i = 1; i <= p; ++i) {
            const double a = static_cast<double>(i) / (p + 1);
            const auto& lo = h[static_cast<std::size_t>(i) - 1];
            const auto& hi = h[static_cast<std::size_t>(i)];
            next[static_cast<std::size_t>(i)] = {a * lo.x + (1 - a) * hi.x, a * lo.y + (1 - a) * hi.y,
                                                 a * lo.w + (1 - a) * hi.w};
        }
        h = std::move(next);
    }
    ParametricCurve c = *this;
    c.degree_ = target_degree;
    from_homog(h, rational(), c.ctrl_, c.weights_);
    return c;
}

ParametricCurve ParametricCurve::transformed(const std::function<Vec2(const Vec2&)>& affine) const
{
    ParametricCurve c = *this;
    for (auto& p : c.ctrl_) p = affine(p);
    return c;
}

Box2 ParametricCurve::control_box() const
{
    Box2 box;
    for (const auto& p : ctrl_) box.add(p);
    return box;
}

bool ParametricCurve::is_degenerate(double tol) const
{
    for (const auto& p : ctrl_)
        if (distance(p, ctrl_.front()) > tol) return false;
    return true;
}

bool ParametricCurve::is_straight(double tol) const
{
    const Vec2 a = ctrl_.front();
    const Vec2 b = ctrl_.back();
    const double len = distance(a, b);
    if (len <= tol) return is_degenerate(tol);
    const Vec2 dir = (b - a) / len;
    for (const auto& p : ctrl_) {
        if (std::abs(cross(dir, p - a)) > tol) return false;
    }
    return true;
}

// ---------------------------------------------------------------- TensorSurface

TensorSurface TensorSurface::bezier(int degree_u, int degree_v, std::vector<Vec3> net)
{
    TensorSurface s;
    s.kind_ = CurveKind::Bezier;
    s.du_ = degree_u;
    s.dv_ = degree_v;
    s.nu_ = degree_u + 1;
    s.nv_ = degree_v + 1;
    s.net_ = std::move(net);
    s.validate();
    return s;
}

TensorSurface TensorSurface::rational_bezier(int degree_u, int degree_v, std::vector<Vec3> net,
                                             std::vector<double> weights)
{
    TensorSurface s;
    s.kind_ = CurveKind::RationalBezier;
    s.du_ = degree_u;
    s.dv_ = degree_v;
    s.nu_ = degree_u + 1;
    s.nv_ = degree_v + 1;
    s.net_ = std::move(net);
    s.weights_ = std::move(weights);
    s.validate();
    return s;
}

TensorSurface TensorSurface::bspline(int degree_u, int degree_v, std::vector<double> knots_u,
                                     std::vector<double> knots_v, std::vector<Vec3> net)
{
    TensorSurface s;
    s.kind_ = CurveKind::BSpline;
    s.du_ = degree_u;
    s.dv_ = degree_v;
    s.nu_ = static_cast<int>(knots_u.size()) - degree_u - 1;
    s.nv_ = static_cast<int>(knots_v.size()) - degree_v - 1;
    if (s.nu_ < 1 || s.nv_ < 1) throw GeometryError("bspline surface: knot vectors too short");
    check_clamped(degree_u, knots_u, static_cast<std::size_t>(s.nu_), "bspline surface (u)");
    check_clamped(degree_v, knots_v, static_cast<std::size_t>(s.nv_), "bspline surface (v)");
    normalize_knots(knots_u);
    normalize_knots(knots_v);
    s.knots_u_ = std::move(knots_u);
    s.knots_v_ = std::move(knots_v);
    s.net_ = std::move(net);
    s.validate();
    return s;
}

TensorSurface TensorSurface::plane(Vec3 origin, Vec3 a, Vec3 b)
{
    return bezier(1, 1, {origin, origin + b, origin + a, origin + a + b});
}

void TensorSurface::validate() const
{
    if (du_ < 1 || dv_ < 1) throw GeometryError("surface degrees must be >= 1");
    if (net_.size() != static_cast<std::size_t>(nu_ * nv_))
        throw GeometryError("surface control net size inconsistent with degrees/knots");
    for (const auto& p : net_)
        if (!is_finite(p)) throw GeometryError("surface control point is not finite");
    if (kind_ == CurveKind::RationalBezier) {
        if (weights_.size() != net_.size()) throw GeometryError("rational surface: #weights != #control points");
        for (double w : weights_)
            if (!(w > 0.0)) throw GeometryError("rational surface: weights must be positive");
    }
}

Vec3 TensorSurface::eval(double u, double v) const
{
    Vec3 su;
    Vec3 sv;
    return eval(u, v, su, sv);
}

Vec3 TensorSurface::eval(double u, double v, Vec3& su, Vec3& sv) const
{
    u = checked_param(u);
    v = checked_param(v);
    thread_local std::vector<double> bu;
    thread_local std::vector<double> dbu;
    thread_local std::vector<double> bv;
    thread_local std::vector<double> dbv;
    bu.resize(static_cast<std::size_t>(nu_));
    dbu.resize(static_cast<std::size_t>(nu_));
    bv.resize(static_cast<std::size_t>(nv_));
    dbv.resize(static_cast<std::size_t>(nv_));
    if (kind_ == CurveKind::BSpline) {
        basis::bspline_with_derivative(du_, knots_u_, u, bu, dbu);
        basis::bspline_with_derivative(dv_, knots_v_, v, bv, dbv);
    } else {
        basis::bernstein_with_derivative(du_, u, bu, dbu);
        basis::bernstein_with_derivative(dv_, v, bv, dbv);
    }
    Vec3 a{};
    Vec3 au{};
    Vec3 av{};
    double w = 0.0;
    double wu = 0.0;
    double wv = 0.0;
    for (int i = 0; i < nu_; ++i) {
        for (int j = 0; j < nv_; ++j) {
            const std::size_t k = static_cast<std::size_t>(i * nv_ + j);
            const double wk = weights_.empty() ? 1.0 : weights_[k];
            const Vec3& p = net_[k];
            const double b = bu[i] * bv[j] * wk;
            const double b_u = dbu[i] * bv[j] * wk;
            const double b_v = bu[i] * dbv[j] * wk;
            a += b * p;
            au += b_u * p;
            av += b_v * p;
            w += b;
            wu += b_u;
            wv += b_v;
        }
    }
    const Vec3 s = a / w;
    su = (au - wu * s) / w;
    sv = (av - wv * s) / w;
    return s;
}

TensorSurface TensorSurface::transposed() const
{
    TensorSurface t = *this;
    std::swap(t.du_, t.dv_);
    std::swap(t.nu_, t.nv_);
    std::swap(t.knots_u_, t.knots_v_);
    for (int i = 0; i < nu_; ++i) {
        for (int j = 0; j < nv_; ++j) {
            t.net_[static_cast<std::size_t>(j * nu_ + i)] = net_[static_cast<std::size_t>(i * nv_ + j)];
            if (!weights_.empty())
                t.weights_[static_cast<std::size_t>(j * nu_ + i)] = weights_[static_cast<std::size_t>(i * nv_ + j)];
        }
    }
    return t;
}

TensorSurface TensorSurface::transformed(const std::function<Vec3(const Vec3&)>& affine) const
{
    TensorSurface t = *this;
    for (auto& p : t.net_) p = affine(p);
    return t;
}

Box3 TensorSurface::control_box() const
{
    Box3 box;
    for (const auto& p : net_) box.add(p);
    return box;
}

// ---------------------------------------------------------------- fitting

std::vector<double> chebyshev_lobatto(int q, double a, double b)
{
    if (q < 1) throw std::invalid_argument("chebyshev_lobatto: degree must be >= 1");
    std::vector<double> t(static_cast<std::size_t>(q) + 1);
    for (int k = 0; k <= q; ++k) {
        const double c = 0.5 * (1.0 - std::cos(std::numbers::pi * k / q));
        t[static_cast<std::size_t>(k)] = a + (b - a) * c;
    }
    t.front() = a;
    t.back() = b;
    return t;
}

namespace {

Eigen::MatrixXd collocation(int q)
{
    const auto tau = chebyshev_lobatto(q);
    Eigen::MatrixXd m(q + 1, q + 1);
    std::vector<double> b(static_cast<std::size_t>(q) + 1);
    for (int k = 0; k <= q; ++k) {
        basis::bernstein(q, tau[static_cast<std::size_t>(k)], b);
        for (int i = 0; i <= q; ++i) m(k, i) = b[static_cast<std::size_t>(i)];
    }
    return m;
}

} // namespace

ParametricCurve fit_bezier_curve(const std::function<Vec2(double)>& map, double a, double b, int q)
{
    if (q < 1) throw std::invalid_argument("fit_bezier_curve: degree must be >= 1");
    if (!(a < b)) throw std::invalid_argument("fit_bezier_curve: requires a < b");
    const auto t = chebyshev_lobatto(q, a, b);
    Eigen::MatrixXd rhs(q + 1, 2);
    for (int k = 0; k <= q; ++k) {
        const Vec2 p = map(t[static_cast<std::size_t>(k)]);
        rhs(k, 0) = p.x;
        rhs(k, 1) = p.y;
    }
    const Eigen::MatrixXd sol = collocation(q).partialPivLu().solve(rhs);
    std::vector<Vec2> ctrl(static_cast<std::size_t>(q) + 1);
    for (int i = 0; i <= q; ++i) ctrl[static_cast<std::size_t>(i)] = {sol(i, 0), sol(i, 1)};
    ctrl.front() = {rhs(0, 0), rhs(0, 1)};
    ctrl.back() = {rhs(q, 0), rhs(q, 1)};
    return ParametricCurve::bezier(std::move(ctrl));
}

ParametricCurve fit_bezier_curve(const ParametricCurve& curve, double a, double b, int q)
{
    return fit_bezier_curve([&curve](double t) { return curve.eval(t); }, a, b, q);
}

BezierPatch fit_bezier_surface(const std::function<Vec3(double, double)>& map, int qu, int qv)
{
    if (qu < 1 || qv < 1) throw std::invalid_argument("fit_bezier_surface: degrees must be >= 1");
    const auto tu = chebyshev_lobatto(qu);
    const auto tv = chebyshev_lobatto(qv);
    const auto lu = collocation(qu).partialPivLu();
    const auto lv = collocation(qv).partialPivLu();
    std::vector<Vec3> net(static_cast<std::size_t>((qu + 1) * (qv + 1)));
    std::vector<Vec3> values(net.size());
    for (int i = 0; i <= qu; ++i)
        for (int j = 0; j <= qv; ++j)
            values[static_cast<std::size_t>(i * (qv + 1) + j)] = map(tu[static_cast<std::size_t>(i)],
                                                                     tv[static_cast<std::size_t>(j)]);
    for (int c = 0; c < 3; ++c) {
        Eigen::MatrixXd v(qu + 1, qv + 1);
        for (int i = 0; i <= qu; ++i)
            for (int j = 0; j <= qv; ++j) v(i, j) = values[static_cast<std::size_t>(i * (qv + 1) + j)][c];
        // P = Mu^{-1} V Mv^{-T}
        const Eigen::MatrixXd left = lu.solve(v);
        const Eigen::MatrixXd p = lv.solve(left.transpose()).transpose();
        for (int i = 0; i <= qu; ++i)
            for (int j = 0; j <= qv; ++j) net[static_cast<std::size_t>(i * (qv + 1) + j)][c] = p(i, j);
    }
    const auto corner = [&](int i, int j) {
        net[static_cast<std::size_t>(i * (qv + 1) + j)] = values[static_cast<std::size_t>(i * (qv + 1) + j)];
    };
    corner(0, 0);
    corner(0, qv);
    corner(qu, 0);
    corner(qu, qv);
    return BezierPatch::bezier(qu, qv, std::move(net));
}

} // namespace foldquad
