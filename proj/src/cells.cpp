#include "foldquad/cells.hpp"

#include "foldquad/errors.hpp"
#include "foldquad/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace foldquad {

std::string_view to_string(SignKind kind)
{
    switch (kind) {
    case SignKind::Jplus: return "jplus";
    case SignKind::Jminus: return "jminus";
    case SignKind::Folded: return "folded";
    case SignKind::Unknown: return "unknown";
    }
    return "unknown";
}

// ---------------------------------------------------------------- Coons

CoonsCell CoonsCell::from_loop(std::array<ParametricCurve, 4> loop)
{
    Box2 box;
    for (const auto& e : loop) box.add(e.control_box());
    const double tol = kGapTol * std::max(1.0, box.diameter());
    CoonsCell cell;
    for (int k = 0; k < 4; ++k) {
        const Vec2 a = loop[static_cast<std::size_t>((k + 3) % 4)].end();
        const Vec2 b = loop[static_cast<std::size_t>(k)].start();
        const double gap = distance(a, b);
        if (!(gap <= tol)) {
            std::ostringstream msg;
            msg << "coons loop not closed at corner " << k + 1 << ": gap " << gap;
            throw GeometryError(msg.str());
        }
        cell.corners_[static_cast<std::size_t>(k)] = 0.5 * (a + b);
    }
    cell.loop_ = std::move(loop);
    return cell;
}

CoonsCell CoonsCell::triangle(const ParametricCurve& base, Vec2 apex)
{
    return from_loop({base, ParametricCurve::line(base.end(), apex), ParametricCurve::point(apex),
                      ParametricCurve::line(apex, base.start())});
}

CoonsCell CoonsCell::unit_square()
{
    return from_loop({ParametricCurve::line({0, 0}, {1, 0}), ParametricCurve::line({1, 0}, {1, 1}),
                      ParametricCurve::line({1, 1}, {0, 1}), ParametricCurve::line({0, 1}, {0, 0})});
}

Vec2 CoonsCell::map(const Vec2& p) const
{
    Vec2 tu;
    Vec2 tv;
    return map(p, tu, tv);
}

Vec2 CoonsCell::map(const Vec2& p, Vec2& tu, Vec2& tv) const
{
    const double u = checked_param(p.x);
    const double v = checked_param(p.y);
    // C1 = L1(u), C2 = L2(v), C3 = L3(1-u), C4 = L4(1-v).
    Vec2 d1, d2, d3, d4;
    const Vec2 c1 = loop_[0].eval(u, d1);
    const Vec2 c2 = loop_[1].eval(v, d2);
    const Vec2 c3 = loop_[2].eval(1.0 - u, d3);
    const Vec2 c4 = loop_[3].eval(1.0 - v, d4);
    d3 = -d3;
    d4 = -d4;
    const auto& [p1, p2, p3, p4] = corners_;
    const double iu = 1.0 - u;
    const double iv = 1.0 - v;
    tu = iv * d1 + v * d3 - c4 + c2 + iv * (p1 - p2) + v * (p4 - p3);
    tv = -c1 + c3 + iu * d4 + u * d2 + iu * (p1 - p4) + u * (p2 - p3);
    return iv * c1 + v * c3 + iu * c4 + u * c2 - (iu * iv) * p1 - (u * iv) * p2 - (u * v) * p3 - (iu * v) * p4;
}

double CoonsCell::jacobian(const Vec2& p) const
{
    Vec2 tu;
    Vec2 tv;
    map(p, tu, tv);
    return cross(tu, tv);
}

Box2 CoonsCell::bounding_box() const
{
    Box2 box;
    for (const auto& e : loop_) box.add(e.control_box());
    return box;
}

int CoonsCell::degree() const
{
    int q = 1;
    for (const auto& e : loop_) q = std::max(q, e.degree());
    return q;
}

CoonsCell CoonsCell::transformed(const std::function<Vec2(const Vec2&)>& affine) const
{
    return from_loop({loop_[0].transformed(affine), loop_[1].transformed(affine), loop_[2].transformed(affine),
                      loop_[3].transformed(affine)});
}

// ---------------------------------------------------------------- surface patches

SurfacePatch::SurfacePatch(BezierPatch patch)
    : surface_(std::make_shared<const TensorSurface>(std::move(patch))), owned_(true)
{
}

SurfacePatch::SurfacePatch(std::shared_ptr<const TensorSurface> surface, std::optional<CoonsCell> reparam,
                           bool transpose)
    : surface_(std::move(surface)), reparam_(std::move(reparam)), transpose_(transpose)
{
    if (!surface_) throw GeometryError("surface patch without a surface");
}

Vec3 SurfacePatch::eval(double u, double v) const
{
    Vec3 su;
    Vec3 sv;
    return eval(u, v, su, sv);
}

Vec3 SurfacePatch::eval(double u, double v, Vec3& su, Vec3& sv) const
{
    const Vec2 a = transpose_ ? Vec2{v, u} : Vec2{u, v};
    Vec3 sa;
    Vec3 sb;
    Vec3 s;
    if (reparam_) {
        Vec2 ra;
        Vec2 rb;
        const Vec2 r = reparam_->map(a, ra, rb);
        Vec3 s1;
        Vec3 s2;
        s = surface_->eval(r.x, r.y, s1, s2);
        sa = ra.x * s1 + ra.y * s2;
        sb = rb.x * s1 + rb.y * s2;
    } else {
        s = surface_->eval(a.x, a.y, sa, sb);
    }
    if (transpose_) {
        su = sb;
        sv = sa;
    } else {
        su = sa;
        sv = sb;
    }
    return s;
}

Box3 SurfacePatch::bounding_box() const
{
    if (!reparam_) return surface_->control_box();
    Box3 box;
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) box.add(eval(i / 8.0, j / 8.0));
    return box;
}

int SurfacePatch::degree() const
{
    const int q = std::max(surface_->degree_u(), surface_->degree_v());
    return reparam_ ? q * reparam_->degree() : q;
}

SurfacePatch SurfacePatch::transformed(const std::function<Vec3(const Vec3&)>& affine) const
{
    if (owned_ && !reparam_ && !transpose_) return SurfacePatch(surface_->transformed(affine));
    return SurfacePatch(std::make_shared<const TensorSurface>(surface_->transformed(affine)), reparam_, transpose_);
}

// ---------------------------------------------------------------- pyramids

PyramidCell::PyramidCell(SurfacePatch base, Vec3 apex, std::optional<int> source_face)
    : base_(std::move(base)), apex_(apex), source_face_(source_face)
{
    if (!is_finite(apex_)) throw GeometryError("pyramid apex is not finite");
}

Vec3 PyramidCell::map(const Vec3& p) const
{
    Vec3 tu, tv, tw;
    return map(p, tu, tv, tw);
}

Vec3 PyramidCell::map(const Vec3& p, Vec3& tu, Vec3& tv, Vec3& tw) const
{
    const double w = checked_param(p.z);
    Vec3 bu;
    Vec3 bv;
    const Vec3 b = base_.eval(p.x, p.y, bu, bv);
    tu = (1.0 - w) * bu;
    tv = (1.0 - w) * bv;
    tw = apex_ - b;
    return (1.0 - w) * b + w * apex_;
}

double PyramidCell::jacobian(const Vec3& p) const
{
    const double w = checked_param(p.z);
    Vec3 bu;
    Vec3 bv;
    const Vec3 b = base_.eval(p.x, p.y, bu, bv);
    const double s = 1.0 - w;
    return s * s * det3(bu, bv, apex_ - b);
}

Box3 PyramidCell::bounding_box() const
{
    Box3 box = base_.bounding_box();
    box.add(apex_);
    return box;
}

PyramidCell PyramidCell::transformed(const std::function<Vec3(const Vec3&)>& affine) const
{
    return PyramidCell(base_.transformed(affine), affine(apex_), source_face_);
}

// ---------------------------------------------------------------- classification

double jacobian_tolerance(const CoonsCell& cell)
{
    const double d = cell.bounding_box().diameter();
    return kJacobianTol * d * d;
}

double jacobian_tolerance(const PyramidCell& cell)
{
    const double d = cell.bounding_box().diameter();
    return kJacobianTol * d * d * d;
}

namespace {

template <class Cell, class Fn>
void for_each_gauss_point(int n, Fn&& fn)
{
    const auto& r = gauss_legendre(n);
    if constexpr (Cell::dim == 2) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) fn(Vec2{r.nodes[i], r.nodes[j]});
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) fn(Vec3{r.nodes[i], r.nodes[j], r.nodes[k]});
    }
}

template <class Cell>
SignClass classify(const Cell& cell, int samples_per_dir)
{
    if (samples_per_dir < 3) throw std::invalid_argument("classify_cell: samples_per_dir must be >= 3");
    const double tol = jacobian_tolerance(cell);
    SignClass sc;
    sc.min_jac = std::numeric_limits<double>::infinity();
    sc.max_jac = -std::numeric_limits<double>::infinity();
    for_each_gauss_point<Cell>(samples_per_dir, [&](const auto& u) {
        const double j = cell.jacobian(u);
        sc.min_jac = std::min(sc.min_jac, j);
        sc.max_jac = std::max(sc.max_jac, j);
        ++sc.samples;
    });
    const bool pos = sc.max_jac > tol;
    const bool neg = sc.min_jac < -tol;
    if (pos && neg) sc.kind = SignKind::Folded;
    else if (pos) sc.kind = SignKind::Jplus;
    else if (neg) sc.kind = SignKind::Jminus;
    else sc.kind = SignKind::Unknown;
    return sc;
}

template <class Cell>
bool zero_measure(const Cell& cell)
{
    const double tol = jacobian_tolerance(cell);
    bool zero = true;
    for_each_gauss_point<Cell>(6, [&](const auto& u) {
        if (std::abs(cell.jacobian(u)) > tol) zero = false;
    });
    return zero;
}

} // namespace

SignClass classify_cell(const CoonsCell& cell, int samples_per_dir) { return classify(cell, samples_per_dir); }
SignClass classify_cell(const PyramidCell& cell, int samples_per_dir) { return classify(cell, samples_per_dir); }

bool is_zero_measure(const CoonsCell& cell) { return zero_measure(cell); }
bool is_zero_measure(const PyramidCell& cell) { return zero_measure(cell); }

} // namespace foldquad
