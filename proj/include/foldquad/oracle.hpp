#pragma once

#include "foldquad/decomp.hpp"
#include "foldquad/geometry.hpp"
#include "foldquad/quadrature.hpp"

#include <functional>
#include <vector>

namespace foldquad {

/// Integrand f with a field F = F1 e_axis such that dF1/dx_axis = f, so div F = f.
struct Antiderivative2 {
    Field2 f;
    Field2 F1;
    int axis = 0;
};

struct Antiderivative3 {
    Field3 f;
    Field3 F1;
    int axis = 0;
};

/// Tensor polynomial in Bernstein form on a box: sum c_ij B_i^p(s) B_j^p(t), s, t the box-local
/// coordinates. Coefficients are stored with the x index outermost. Defined on all of R^d.
struct BernsteinPolynomial2 {
    Box2 box;
    int p = 0;
    std::vector<double> coeffs;

    static BernsteinPolynomial2 unit(const Box2& box, int p, int i, int j);
    double operator()(const Vec2& x) const;
    /// Exact integral in x from box.lo.x, via the degree-raised Bernstein antiderivative.
    double antiderivative_x(const Vec2& x) const;
    Antiderivative2 antiderivative() const;
};

struct BernsteinPolynomial3 {
    Box3 box;
    int p = 0;
    std::vector<double> coeffs;

    static BernsteinPolynomial3 unit(const Box3& box, int p, int i, int j, int k);
    double operator()(const Vec3& x) const;
    double antiderivative_x(const Vec3& x) const;
    Antiderivative3 antiderivative() const;
};

/// exp(y) sin(x) cos(y) with F1 = -exp(y) cos(x) cos(y).
Antiderivative2 smooth_test_function_2d();
/// exp(y) sin(x) cos(y) cos(z) with F1 = -exp(y) cos(x) cos(y) cos(z).
Antiderivative3 smooth_test_function_3d();

/// Sum over boundary entities of the n-point Gauss rule applied to F.n: F1(C(t)) (+/-) C'(t) in 2D,
/// F1(S) (Su x Sv)_axis over the trimmed face domain in 3D. Throws GeometryError naming the edge
/// when a tangent vanishes at a node.
double boundary_integral(const CurvedPolygon& region, const Antiderivative2& F, int n = 32);
double boundary_integral(const CurvedPolyhedron& region, const Antiderivative3& F, int n = 16);

/// Region volume by the boundary integral of x_axis n_axis.
double boundary_measure(const CurvedPolygon& region);
double boundary_measure(const CurvedPolyhedron& region, int axis = 0, int n = 16);
/// Sum over faces of the integral of the unnormalized normal; zero for a closed surface.
Vec3 vector_area(const CurvedPolyhedron& region, int n = 16);

/// Throws OrientationError when the faces are not consistently outward (volumes from the three
/// axis fields disagree or are not positive), GeometryError when the surface is not closed.
void require_outward_closed(const CurvedPolyhedron& region);

/// Sum over cells of sign(Jac) at every preimage of x, found by Newton from a multistart^d
/// lattice of initial guesses; preimages closer than 1e-8 in parameter space are merged.
int signed_count(const Vec2& x, const Decomposition2D& d, int multistart = 7);
int signed_count(const Vec3& x, const Decomposition3D& d, int multistart = 7);

/// Distance from x to the image of the parent-cube boundary of any cell.
double distance_to_cell_boundaries(const Vec2& x, const Decomposition2D& d);
double distance_to_cell_boundaries(const Vec3& x, const Decomposition3D& d);

/// Inside test plus a conservative "boundary may cross this box" test.
struct DenseRegion2D {
    Box2 box;
    std::function<bool(const Vec2&)> inside;
    std::function<bool(const Box2&)> may_cross;
};

struct DenseRegion3D {
    Box3 box;
    std::function<bool(const Vec3&)> inside;
    std::function<bool(const Box3&)> may_cross;
};

/// Generic regions: winding number for inside tests, boundary subdivision for crossing tests.
DenseRegion2D dense_region(const CurvedPolygon& polygon);
/// Generalized winding number (solid angle) and sampled face boxes; slow, meant for small inputs.
DenseRegion3D dense_region(const CurvedPolyhedron& brep);

/// Low-order adaptive reference independent of the cell machinery: the box is split into m^d
/// boxes; boxes the boundary cannot cross get an n-point Gauss rule when inside, the others are
/// bisected down to `depth` levels and finished with a midpoint-classified midpoint rule.
double dense_reference(const DenseRegion2D& region, const Field2& f, int m, int depth = 12, int n = 4, int jobs = 0);
double dense_reference(const DenseRegion3D& region, const Field3& f, int m, int depth = 3, int n = 4, int jobs = 0);

/// Winding number of a closed B-rep around x via adaptive quadrature of the solid angle.
double generalized_winding_number(const CurvedPolyhedron& brep, const Vec3& x);

} // namespace foldquad
