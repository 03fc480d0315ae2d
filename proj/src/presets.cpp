#include "foldquad/presets.hpp"

#include "foldquad/intersect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace foldquad {

namespace {

using L = ParametricCurve;

ParametricCurve quarter_arc(double r)
{
    return L::rational_bezier({{r, 0}, {r, r}, {0, r}}, {1.0, std::sqrt(0.5), 1.0});
}

// The domain in both cap faces: unit square minus the disk of radius r, starting at (1,1) so that
// the quad-dominant chord runs from (r,0) to (1,1) and stays clear of the arc.
CurvedPolygon square_minus_disk_from_corner(double r)
{
    return CurvedPolygon({L::line({1, 1}, {0, 1}), L::line({0, 1}, {0, r}), quarter_arc(r).reverse(),
                          L::line({r, 0}, {1, 0}), L::line({1, 0}, {1, 1})});
}

const Vec3 kFig8Net[3][3] = {
    {{1, 0.2, 0}, {1, 0.8, 0.5}, {1, 0.4, 1}},
    {{0.5, 0.5, 0}, {0.5, 0.5, 0.5}, {0.25, 0.25, 1}},
    {{0.2, 1, 0}, {0, 1, 0.5}, {0.3, 1, 1}},
};

Vec2 swap(const Vec2& p) { return {p.y, p.x}; }

// Cross-section of the Fig. 8a solid at height z: the curve S(u, z) closed through (1,1).
CurvedPolygon fig8a_slice(double z)
{
    double b[3];
    basis::bernstein(2, z, b);
    std::vector<Vec2> q;
    for (const auto& row : kFig8Net) {
        Vec3 p{};
        for (int j = 0; j < 3; ++j) p += b[j] * row[j];
        q.push_back({p.x, p.y});
    }
    return CurvedPolygon({L::bezier(q), L::line(q[2], {1, 1}), L::line({1, 1}, q[0])}).oriented_ccw();
}

double min_dist_sq(const Box2& b)
{
    const double dx = std::max({b.lo.x, 0.0, -b.hi.x});
    const double dy = std::max({b.lo.y, 0.0, -b.hi.y});
    return dx * dx + dy * dy;
}

double max_dist_sq(const Box2& b)
{
    const double dx = std::max(std::abs(b.lo.x), std::abs(b.hi.x));
    const double dy = std::max(std::abs(b.lo.y), std::abs(b.hi.y));
    return dx * dx + dy * dy;
}

bool circle_crosses(const Box2& b, double r)
{
    return min_dist_sq(b) < r * r && max_dist_sq(b) > r * r;
}

} // namespace

CurvedPolygon fig6a_polygon()
{
    const auto spline = L::bspline(2, {0, 0, 0, 0.25, 0.5, 0.75, 1, 1, 1},
                                   {{0, 0.25}, {0.25, 0}, {0.5, 0.5}, {0.9, 0.25}, {0.8, 0.125}, {0.75, 0}});
    return CurvedPolygon({L::line({0.75, 0}, {1, 0}), L::line({1, 0}, {1, 1}), L::line({1, 1}, {0, 1}),
                          L::line({0, 1}, {0, 0.25}), spline});
}

CurvedPolygon fig7a_polygon(double radius)
{
    const double r = radius;
    return CurvedPolygon({L::line({r, 0}, {1, 0}), L::line({1, 0}, {1, 1}), L::line({1, 1}, {0, 1}),
                          L::line({0, 1}, {0, r}), quarter_arc(r).reverse()});
}

CurvedPolyhedron fig8a_polyhedron()
{
    // Net stored u-major; the transpose makes Su x Sv point away from the edge x = y = 1.
    std::vector<Vec3> net;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) net.push_back(kFig8Net[i][j]);
    auto curved = TensorSurface::bezier(2, 2, net);

    auto row = [](int j) {
        return std::vector<Vec2>{{kFig8Net[0][j].x, kFig8Net[0][j].y},
                                 {kFig8Net[1][j].x, kFig8Net[1][j].y},
                                 {kFig8Net[2][j].x, kFig8Net[2][j].y}};
    };
    std::vector<ParametricFace> faces;

    // z = 0, parameters (y, x).
    {
        auto c = row(0);
        for (auto& p : c) p = swap(p);
        CurvedPolygon d({L::bezier(c), L::line(c[2], {1, 1}), L::line({1, 1}, c[0])});
        faces.push_back({TensorSurface::plane({0, 0, 0}, {0, 1, 0}, {1, 0, 0}), d.oriented_ccw()});
    }
    // z = 1, parameters (x, y).
    {
        auto c = row(2);
        CurvedPolygon d({L::bezier(c), L::line(c[2], {1, 1}), L::line({1, 1}, c[0])});
        faces.push_back({TensorSurface::plane({0, 0, 1}, {1, 0, 0}, {0, 1, 0}), d.oriented_ccw()});
    }
    // x = 1, parameters (y, z).
    {
        std::vector<Vec2> c{{kFig8Net[0][0].y, 0}, {kFig8Net[0][1].y, 0.5}, {kFig8Net[0][2].y, 1}};
        CurvedPolygon d({L::bezier(c), L::line(c[2], {1, 1}), L::line({1, 1}, {1, 0}), L::line({1, 0}, c[0])});
        faces.push_back({TensorSurface::plane({1, 0, 0}, {0, 1, 0}, {0, 0, 1}), d.oriented_ccw()});
    }
    // y = 1, parameters (z, x).
    {
        std::vector<Vec2> c{{0, kFig8Net[2][0].x}, {0.5, kFig8Net[2][1].x}, {1, kFig8Net[2][2].x}};
        CurvedPolygon d({L::bezier(c), L::line(c[2], {1, 1}), L::line({1, 1}, {0, 1}), L::line({0, 1}, c[0])});
        faces.push_back({TensorSurface::plane({0, 1, 0}, {0, 0, 1}, {1, 0, 0}), d.oriented_ccw()});
    }
    faces.push_back(ParametricFace::untrimmed(std::move(curved)));
    return CurvedPolyhedron(std::move(faces));
}

CurvedPolyhedron fig5_polyhedron(double length, double radius)
{
    const double s = length;
    const double r = radius / length;
    std::vector<ParametricFace> faces;
    faces.push_back({TensorSurface::plane({0, 0, 0}, {0, s, 0}, {s, 0, 0}), square_minus_disk_from_corner(r)});
    faces.push_back({TensorSurface::plane({0, 0, s}, {s, 0, 0}, {0, s, 0}), square_minus_disk_from_corner(r)});
    faces.push_back(ParametricFace::untrimmed(TensorSurface::plane({s, 0, 0}, {0, s, 0}, {0, 0, s})));
    faces.push_back(ParametricFace::untrimmed(TensorSurface::plane({0, s, 0}, {0, 0, s}, {s, 0, 0})));
    faces.push_back({TensorSurface::plane({0, 0, 0}, {0, 0, s}, {0, s, 0}), CurvedPolygon::rectangle({0, r}, {1, 1})});
    faces.push_back({TensorSurface::plane({0, 0, 0}, {s, 0, 0}, {0, 0, s}), CurvedPolygon::rectangle({r, 0}, {1, 1})});
    // Quarter cylinder: u runs up the axis, v along the arc from (R,0) to (0,R).
    const double R = radius;
    const Vec2 arc[3] = {{R, 0}, {R, R}, {0, R}};
    std::vector<Vec3> net;
    for (double z : {0.0, s})
        for (const auto& a : arc) net.push_back({a.x, a.y, z});
    const double w = std::sqrt(0.5);
    faces.push_back(ParametricFace::untrimmed(TensorSurface::rational_bezier(1, 2, net, {1, w, 1, 1, w, 1})));
    return CurvedPolyhedron(std::move(faces));
}

CurvedPolyhedron unit_cube()
{
    std::vector<ParametricFace> faces;
    faces.push_back(ParametricFace::untrimmed(TensorSurface::plane({0, 0, 0}, {0, 1, 0}, {1, 0, 0})));
    faces.push_back(ParametricFace::untrimmed(TensorSurface::plane({0, 0, 1}, {1, 0, 0}, {0, 1, 0})));
    faces.push_back(ParametricFace::untrimmed(TensorSurface::plane({0, 0, 0}, {0, 0, 1}, {0, 1, 0})));
    faces.push_back(ParametricFace::untrimmed(TensorSurface::plane({1, 0, 0}, {0, 1, 0}, {0, 0, 1})));
    faces.push_back(ParametricFace::untrimmed(TensorSurface::plane({0, 0, 0}, {1, 0, 0}, {0, 0, 1})));
    faces.push_back(ParametricFace::untrimmed(TensorSurface::plane({0, 1, 0}, {0, 0, 1}, {1, 0, 0})));
    return CurvedPolyhedron(std::move(faces));
}

double fig5_volume(double length, double radius)
{
    return length * (length * length - std::numbers::pi * radius * radius / 4.0);
}

double fig7a_area(double radius) { return 1.0 - std::numbers::pi * radius * radius / 4.0; }

DenseRegion2D preset_dense_region_2d(const std::string& name)
{
    if (name == "fig7a") {
        const double r = 0.65;
        DenseRegion2D d;
        d.box.add(Vec2{0, 0});
        d.box.add(Vec2{1, 1});
        d.inside = [r](const Vec2& x) {
            return x.x > 0 && x.x < 1 && x.y > 0 && x.y < 1 && x.x * x.x + x.y * x.y > r * r;
        };
        d.may_cross = [r](const Box2& b) { return circle_crosses(b, r); };
        return d;
    }
    if (name == "square") {
        DenseRegion2D d;
        d.box.add(Vec2{0, 0});
        d.box.add(Vec2{1, 1});
        d.inside = [](const Vec2& x) { return x.x > 0 && x.x < 1 && x.y > 0 && x.y < 1; };
        d.may_cross = [](const Box2&) { return false; };
        return d;
    }
    return dense_region(polygon_preset(name));
}

DenseRegion3D preset_dense_region_3d(const std::string& name)
{
    auto in_cube = [](const Vec3& x) { return x.x > 0 && x.x < 1 && x.y > 0 && x.y < 1 && x.z > 0 && x.z < 1; };
    if (name == "cube") {
        DenseRegion3D d;
        d.box.add(Vec3{0, 0, 0});
        d.box.add(Vec3{1, 1, 1});
        d.inside = in_cube;
        d.may_cross = [](const Box3&) { return false; };
        return d;
    }
    if (name == "fig5") {
        const double r = 0.65;
        DenseRegion3D d;
        d.box.add(Vec3{0, 0, 0});
        d.box.add(Vec3{1, 1, 1});
        d.inside = [r, in_cube](const Vec3& x) { return in_cube(x) && x.x * x.x + x.y * x.y > r * r; };
        d.may_cross = [r](const Box3& b) {
            Box2 p;
            p.add(Vec2{b.lo.x, b.lo.y});
            p.add(Vec2{b.hi.x, b.hi.y});
            return circle_crosses(p, r);
        };
        return d;
    }
    if (name == "fig8a") {
        auto d = dense_region(fig8a_polyhedron());
        d.inside = [in_cube](const Vec3& x) {
            if (!in_cube(x)) return false;
            const double w = winding_number(fig8a_slice(x.z), {x.x, x.y});
            return !std::isnan(w) && w > 0.5;
        };
        return d;
    }
    throw std::invalid_argument("unknown 3D preset: " + name);
}

std::vector<std::string> preset_names_2d() { return {"fig6a", "fig7a", "square"}; }
std::vector<std::string> preset_names_3d() { return {"fig5", "fig8a", "cube"}; }

bool is_preset_2d(const std::string& name)
{
    const auto n = preset_names_2d();
    return std::find(n.begin(), n.end(), name) != n.end();
}

bool is_preset_3d(const std::string& name)
{
    const auto n = preset_names_3d();
    return std::find(n.begin(), n.end(), name) != n.end();
}

CurvedPolygon polygon_preset(const std::string& name)
{
    if (name == "fig6a") return fig6a_polygon();
    if (name == "fig7a") return fig7a_polygon();
    if (name == "square") return CurvedPolygon::rectangle({0, 0}, {1, 1});
    throw std::invalid_argument("unknown 2D preset: " + name);
}

CurvedPolyhedron polyhedron_preset(const std::string& name)
{
    if (name == "fig5") return fig5_polyhedron();
    if (name == "fig8a") return fig8a_polyhedron();
    if (name == "cube") return unit_cube();
    throw std::invalid_argument("unknown 3D preset: " + name);
}

} // namespace foldquad
