#include "foldquad/geometry.hpp"

#include "foldquad/errors.hpp"
#include "foldquad/gauss.hpp"

#include <algorithm>
#include <sstream>

namespace foldquad {

// ---------------------------------------------------------------- CurvedPolygon

CurvedPolygon CurvedPolygon::from_points(const std::vector<Vec2>& corners)
{
    std::vector<ParametricCurve> edges;
    edges.reserve(corners.size());
    for (std::size_t i = 0; i < corners.size(); ++i)
        edges.push_back(ParametricCurve::line(corners[i], corners[(i + 1) % corners.size()]));
    return CurvedPolygon(std::move(edges));
}

CurvedPolygon CurvedPolygon::rectangle(Vec2 lo, Vec2 hi)
{
    return from_points({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
}

std::vector<Vec2> CurvedPolygon::vertices() const
{
    std::vector<Vec2> v;
    v.reserve(edges_.size());
    for (const auto& e : edges_) v.push_back(e.start());
    return v;
}

Box2 CurvedPolygon::bounding_box() const
{
    Box2 box;
    for (const auto& e : edges_) box.add(e.control_box());
    return box;
}

double CurvedPolygon::max_gap() const
{
    double gap = 0.0;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        gap = std::max(gap, distance(edges_[i].end(), edges_[(i + 1) % edges_.size()].start()));
    return gap;
}

double CurvedPolygon::gap_tolerance() const { return kGapTol * std::max(bounding_box().diameter(), 1e-300); }

double CurvedPolygon::signed_area() const
{
    double area = 0.0;
    for (const auto& edge : edges_) {
        for (const auto& piece : edge.bezier_pieces()) {
            const int n = piece.rational() ? 40 : piece.degree() + 1;
            const auto& rule = gauss_legendre(n);
            for (int q = 0; q < n; ++q) {
                const double t = rule.nodes[static_cast<std::size_t>(q)];
                area += rule.weights[static_cast<std::size_t>(q)] * piece.eval(t).x * piece.derivative(t).y;
            }
        }
    }
    return area;
}

CurvedPolygon CurvedPolygon::bezier_segmented() const
{
    std::vector<ParametricCurve> out;
    for (const auto& e : edges_) {
        if (e.kind() != CurveKind::BSpline) {
            out.push_back(e);
            continue;
        }
        for (auto& piece : e.bezier_pieces()) out.push_back(std::move(piece));
    }
    return CurvedPolygon(std::move(out));
}

CurvedPolygon CurvedPolygon::reversed() const
{
    std::vector<ParametricCurve> out;
    out.reserve(edges_.size());
    for (auto it = edges_.rbegin(); it != edges_.rend(); ++it) out.push_back(it->reverse());
    return CurvedPolygon(std::move(out));
}

CurvedPolygon CurvedPolygon::oriented_ccw() const { return signed_area() < 0.0 ? reversed() : *this; }

CurvedPolygon CurvedPolygon::rotated(std::size_t k) const
{
    std::vector<ParametricCurve> out(edges_);
    if (!out.empty()) std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()), out.end());
    return CurvedPolygon(std::move(out));
}

CurvedPolygon CurvedPolygon::transformed(const std::function<Vec2(const Vec2&)>& affine) const
{
    std::vector<ParametricCurve> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.push_back(e.transformed(affine));
    return CurvedPolygon(std::move(out));
}

void CurvedPolygon::require_valid() const
{
    if (edges_.empty()) throw GeometryError("curved polygon has no edges");
    const double gap = max_gap();
    if (gap > gap_tolerance()) {
        std::ostringstream msg;
        msg << "curved polygon loop is open: gap " << gap << " exceeds " << gap_tolerance();
        throw GeometryError(msg.str());
    }
    if (signed_area() <= 0.0) throw OrientationError("curved polygon is not counterclockwise");
}

// ---------------------------------------------------------------- faces

ParametricFace ParametricFace::untrimmed(TensorSurface surface)
{
    return {std::move(surface), CurvedPolygon::rectangle({0.0, 0.0}, {1.0, 1.0})};
}

std::vector<Vec3> ParametricFace::vertices() const
{
    std::vector<Vec3> v;
    for (const auto& p : domain.vertices()) v.push_back(surface.eval(p.x, p.y));
    return v;
}

Box3 ParametricFace::bounding_box() const { return surface.control_box(); }

void ParametricFace::require_valid() const
{
    domain.require_valid();
    // Control polygons may overshoot the unit square while the curve itself stays inside.
    for (const auto& e : domain.edges()) {
        for (int k = 0; k <= 16; ++k) {
            const Vec2 p = e.eval(k / 16.0);
            if (p.x < -kParamTol || p.x > 1.0 + kParamTol || p.y < -kParamTol || p.y > 1.0 + kParamTol)
                throw GeometryError("face parameter domain leaves the unit square");
        }
    }
}

std::vector<Vec3> CurvedPolyhedron::vertices() const
{
    const double tol = gap_tolerance();
    std::vector<Vec3> out;
    for (const auto& f : faces_) {
        for (const auto& v : f.vertices()) {
            const bool seen = std::any_of(out.begin(), out.end(), [&](const Vec3& w) { return distance(v, w) <= tol; });
            if (!seen) out.push_back(v);
        }
    }
    return out;
}

Box3 CurvedPolyhedron::bounding_box() const
{
    Box3 box;
    for (const auto& f : faces_) box.add(f.bounding_box());
    return box;
}

double CurvedPolyhedron::gap_tolerance() const { return kGapTol * std::max(bounding_box().diameter(), 1e-300); }

CurvedPolyhedron CurvedPolyhedron::transformed(const std::function<Vec3(const Vec3&)>& affine) const
{
    std::vector<ParametricFace> out;
    for (const auto& f : faces_) out.push_back({f.surface.transformed(affine), f.domain});
    return CurvedPolyhedron(std::move(out));
}

} // namespace foldquad
