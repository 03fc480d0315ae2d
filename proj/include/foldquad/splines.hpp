#pragma once

#include "foldquad/vec.hpp"

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace foldquad {

enum class CurveKind { Bezier, RationalBezier, BSpline };

std::string_view to_string(CurveKind kind);
CurveKind curve_kind_from_string(std::string_view name);

/// Parameter tolerance for domain checks on [0,1].
inline constexpr double kParamTol = 1e-12;

/// Clamps t into [0,1], throwing std::domain_error when it lies outside beyond kParamTol.
double checked_param(double t);

namespace basis {

/// Bernstein polynomials B_i^p(t), i = 0..p.
void bernstein(int p, double t, std::span<double> out);

/// Values and first derivatives of all degree-p Bernstein polynomials at t.
void bernstein_with_derivative(int p, double t, std::span<double> val, std::span<double> der);

/// Values and first derivatives of all B-spline basis functions for a clamped knot vector.
void bspline_with_derivative(int p, std::span<const double> knots, double t, std::span<double> val,
                             std::span<double> der);

} // namespace basis

/// Bézier, rational Bézier, or clamped B-spline curve in the plane, parameterized on [0,1].
class ParametricCurve {
public:
    static ParametricCurve bezier(std::vector<Vec2> ctrl);
    static ParametricCurve rational_bezier(std::vector<Vec2> ctrl, std::vector<double> weights);
    static ParametricCurve bspline(int degree, std::vector<double> knots, std::vector<Vec2> ctrl);
    static ParametricCurve line(Vec2 a, Vec2 b);
    /// Zero-length curve, used for the collapsed side of triangular Coons cells.
    static ParametricCurve point(Vec2 p);

    CurveKind kind() const { return kind_; }
    int degree() const { return degree_; }
    bool rational() const { return !weights_.empty(); }
    bool reversed() const { return reversed_; }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<Vec2>& control_points() const { return ctrl_; }
    const std::vector<double>& weights() const { return weights_; }

    Vec2 eval(double t) const;
    Vec2 derivative(double t) const;
    /// Point and derivative in one pass.
    Vec2 eval(double t, Vec2& d) const;
    Vec2 start() const { return eval(0.0); }
    Vec2 end() const { return eval(1.0); }

    /// Same point set traversed in the opposite direction.
    ParametricCurve reverse() const;

    /// Bézier segments between distinct knots, forward-oriented, in traversal order.
    std::vector<ParametricCurve> bezier_pieces() const;

    /// Exact restriction to [a,b] of the traversal parameter (Bézier kinds only), forward-oriented.
    ParametricCurve subcurve(double a, double b) const;

    /// Exact degree elevation (Bézier kinds only).
    ParametricCurve elevate(int target_degree) const;

    /// Applies an affine map to the control points.
    ParametricCurve transformed(const std::function<Vec2(const Vec2&)>& affine) const;

    Box2 control_box() const;
    bool is_degenerate(double tol) const;
    /// True when every control point lies on the chord through the end points.
    bool is_straight(double tol) const;

private:
    ParametricCurve() = default;
    void validate() const;
    double canonical(double t) const { return reversed_ ? 1.0 - t : t; }
    void eval_basis(double s, std::vector<double>& val, std::vector<double>& der) const;

    CurveKind kind_ = CurveKind::Bezier;
    int degree_ = 1;
    std::vector<double> knots_;
    std::vector<Vec2> ctrl_;
    std::vector<double> weights_;
    bool reversed_ = false;
};

/// Tensor-product surface (Bézier, rational Bézier, or B-spline) mapping [0,1]^2 into R^3.
/// Control points are stored row-major with the u index outermost.
class TensorSurface {
public:
    static TensorSurface bezier(int degree_u, int degree_v, std::vector<Vec3> net);
    static TensorSurface rational_bezier(int degree_u, int degree_v, std::vector<Vec3> net,
                                         std::vector<double> weights);
    static TensorSurface bspline(int degree_u, int degree_v, std::vector<double> knots_u,
                                 std::vector<double> knots_v, std::vector<Vec3> net);
    /// Plane patch origin + u*a + v*b.
    static TensorSurface plane(Vec3 origin, Vec3 a, Vec3 b);

    CurveKind kind() const { return kind_; }
    int degree_u() const { return du_; }
    int degree_v() const { return dv_; }
    int count_u() const { return nu_; }
    int count_v() const { return nv_; }
    bool rational() const { return !weights_.empty(); }
    const std::vector<double>& knots_u() const { return knots_u_; }
    const std::vector<double>& knots_v() const { return knots_v_; }
    const std::vector<Vec3>& control_points() const { return net_; }
    const std::vector<double>& weights() const { return weights_; }
    const Vec3& control(int i, int j) const { return net_[static_cast<std::size_t>(i * nv_ + j)]; }

    Vec3 eval(double u, double v) const;
    /// Returns the point and writes both partial derivatives.
    Vec3 eval(double u, double v, Vec3& su, Vec3& sv) const;

    /// Same surface with u and v exchanged, which flips the normal.
    TensorSurface transposed() const;
    TensorSurface transformed(const std::function<Vec3(const Vec3&)>& affine) const;
    Box3 control_box() const;

private:
    TensorSurface() = default;
    void validate() const;

    CurveKind kind_ = CurveKind::Bezier;
    int du_ = 1;
    int dv_ = 1;
    int nu_ = 2;
    int nv_ = 2;
    std::vector<double> knots_u_;
    std::vector<double> knots_v_;
    std::vector<Vec3> net_;
    std::vector<double> weights_;
};

/// Polynomial tensor Bézier patch produced by fitting.
using BezierPatch = TensorSurface;

/// Chebyshev–Lobatto parameters of [a,b] for a degree-q interpolant (q+1 values, end points included).
std::vector<double> chebyshev_lobatto(int q, double a = 0.0, double b = 1.0);

/// Degree-q polynomial Bézier interpolating curve restricted to [a,b] at Chebyshev–Lobatto parameters.
ParametricCurve fit_bezier_curve(const ParametricCurve& curve, double a, double b, int q);

/// Same for an arbitrary parametric map [a,b] -> R^2.
ParametricCurve fit_bezier_curve(const std::function<Vec2(double)>& map, double a, double b, int q);

/// Degree-(qu,qv) tensor Bézier interpolating map on the Chebyshev–Lobatto grid of [0,1]^2.
BezierPatch fit_bezier_surface(const std::function<Vec3(double, double)>& map, int qu, int qv);

} // namespace foldquad
