#pragma once

#include "foldquad/geometry.hpp"
#include "foldquad/oracle.hpp"

#include <string>
#include <vector>

namespace foldquad {

// Test geometries built from published control data.

/// Unit square whose lower-left corner is cut by the quadratic B-spline
/// (0,.25) (.25,0) (.5,.5) (.9,.25) (.8,.125) (.75,0), knots {0,0,0,.25,.5,.75,1,1,1}.
CurvedPolygon fig6a_polygon();
/// Unit square minus the disk of the given radius centred at the origin; the arc is a rational
/// quadratic Bézier.
CurvedPolygon fig7a_polygon(double radius = 0.65);
/// Unit cube cut by the bi-quadratic Bézier surface; the solid keeps the edge x = y = 1.
CurvedPolyhedron fig8a_polyhedron();
/// Cube [0,L]^3 minus the cylinder x^2 + y^2 < R^2: six planar faces plus a rational quarter cylinder.
CurvedPolyhedron fig5_polyhedron(double length = 1.0, double radius = 0.65);
CurvedPolyhedron unit_cube();

double fig5_volume(double length = 1.0, double radius = 0.65);
double fig7a_area(double radius = 0.65);

/// Analytic inside/crossing predicates where available, the generic ones otherwise.
DenseRegion2D preset_dense_region_2d(const std::string& name);
DenseRegion3D preset_dense_region_3d(const std::string& name);

/// Names: fig6a, fig7a, square (2D); fig5, fig8a, cube (3D).
std::vector<std::string> preset_names_2d();
std::vector<std::string> preset_names_3d();
bool is_preset_2d(const std::string& name);
bool is_preset_3d(const std::string& name);
CurvedPolygon polygon_preset(const std::string& name);
CurvedPolyhedron polyhedron_preset(const std::string& name);

} // namespace foldquad
