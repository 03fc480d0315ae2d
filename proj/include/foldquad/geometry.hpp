#pragma once

#include "foldquad/splines.hpp"
#include "foldquad/vec.hpp"

#include <functional>
#include <string>
#include <vector>

namespace foldquad {

/// Relative gap tolerance between consecutive boundary entities (scaled by the bounding-box diameter).
inline constexpr double kGapTol = 1e-8;

/// Closed loop of parametric edges, counterclockwise for a positively oriented region.
class CurvedPolygon {
public:
    CurvedPolygon() = default;
    explicit CurvedPolygon(std::vector<ParametricCurve> edges) : edges_(std::move(edges)) {}

    /// Polygon with straight edges through the given corners.
    static CurvedPolygon from_points(const std::vector<Vec2>& corners);
    /// Axis-aligned rectangle, counterclockwise from lo.
    static CurvedPolygon rectangle(Vec2 lo, Vec2 hi);

    const std::vector<ParametricCurve>& edges() const { return edges_; }
    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }

    /// Start point of every edge, in loop order.
    std::vector<Vec2> vertices() const;
    /// Conservative box from the control polygons.
    Box2 bounding_box() const;
    /// Largest distance between the end of an edge and the start of the next.
    double max_gap() const;
    double gap_tolerance() const;
    bool is_closed() const { return max_gap() <= gap_tolerance(); }

    /// Area enclosed by the loop via the boundary integral of x dy; positive when counterclockwise.
    double signed_area() const;

    /// Splits B-spline edges into their Bézier segments.
    CurvedPolygon bezier_segmented() const;
    CurvedPolygon reversed() const;
    CurvedPolygon oriented_ccw() const;
    /// Same loop starting at edge k.
    CurvedPolygon rotated(std::size_t k) const;
    CurvedPolygon transformed(const std::function<Vec2(const Vec2&)>& affine) const;

    /// Throws GeometryError for gaps or an empty loop, OrientationError for clockwise loops.
    void require_valid() const;

private:
    std::vector<ParametricCurve> edges_;
};

/// Trimmed parametric face: surface restricted to a counterclockwise domain loop in [0,1]^2.
/// The surface normal Su x Sv points out of the enclosed solid.
struct ParametricFace {
    TensorSurface surface;
    CurvedPolygon domain;

    static ParametricFace untrimmed(TensorSurface surface);

    Vec3 eval(double u, double v) const { return surface.eval(u, v); }
    /// Corners of the domain loop mapped into R^3.
    std::vector<Vec3> vertices() const;
    Box3 bounding_box() const;
    /// Throws GeometryError when the domain is not a valid loop inside the unit square.
    void require_valid() const;
};

/// Closed B-rep made of trimmed faces with outward normals.
class CurvedPolyhedron {
public:
    CurvedPolyhedron() = default;
    explicit CurvedPolyhedron(std::vector<ParametricFace> faces) : faces_(std::move(faces)) {}

    const std::vector<ParametricFace>& faces() const { return faces_; }
    std::size_t size() const { return faces_.size(); }
    bool empty() const { return faces_.empty(); }

    /// Distinct face-loop corners, deduplicated within the gap tolerance.
    std::vector<Vec3> vertices() const;
    Box3 bounding_box() const;
    double gap_tolerance() const;

    CurvedPolyhedron transformed(const std::function<Vec3(const Vec3&)>& affine) const;

private:
    std::vector<ParametricFace> faces_;
};

} // namespace foldquad
