#pragma once

#include "foldquad/geometry.hpp"
#include "foldquad/splines.hpp"

#include <vector>

namespace foldquad {

/// Roots in [0,1] of sum_i b_i B_i^p(t), ascending and deduplicated. Isolated by subdivision with
/// the variation-diminishing property, then refined by a bracketed secant/bisection iteration.
/// An identically zero polynomial has no isolated roots and returns an empty list.
std::vector<double> bernstein_roots(const std::vector<double>& coeffs);

/// Forward-oriented (rational) Bézier equivalent of a Bézier-kind curve.
ParametricCurve forward_bezier(const ParametricCurve& curve);

/// Traversal parameters in [0,1] where a Bézier-kind curve meets the line {x[axis] = c}.
/// A curve lying on the line returns no parameters.
std::vector<double> curve_line_params(const ParametricCurve& curve, int axis, double c);

/// Winding number of a closed loop around p, computed by subdividing each Bézier piece until
/// its control polygon is seen from p within a half-plane. Returns NaN when p lies on the
/// boundary (to within the subdivision limit).
double winding_number(const CurvedPolygon& loop, Vec2 p);

/// Distance from p to a curve, by sampling followed by Newton refinement on the squared distance.
double distance_to_curve(const ParametricCurve& curve, Vec2 p);

} // namespace foldquad
