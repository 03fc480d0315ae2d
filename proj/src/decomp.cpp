#include "foldquad/decomp.hpp"

#include "foldquad/errors.hpp"

#include <algorithm>
#include <limits>
#include <memory>

namespace foldquad {

std::string_view to_string(DecompositionKind kind)
{
    switch (kind) {
    case DecompositionKind::JplusCertified: return "jplus_certified";
    case DecompositionKind::Folded: return "folded";
    case DecompositionKind::Unverified: return "unverified";
    }
    return "unverified";
}

namespace {

std::vector<CoonsCell> quad_cells(const CurvedPolygon& polygon)
{
    if (polygon.size() < 3) throw GeometryError("quad_dominant_split: polygon needs at least 3 edges");
    std::vector<ParametricCurve> rest = polygon.edges();
    std::vector<CoonsCell> out;
    while (rest.size() > 4) {
        const Vec2 v0 = rest[0].start();
        const Vec2 v3 = rest[2].end();
        out.push_back(CoonsCell::from_loop({rest[0], rest[1], rest[2], ParametricCurve::line(v3, v0)}));
        std::vector<ParametricCurve> next;
        next.reserve(rest.size() - 2);
        next.push_back(ParametricCurve::line(v0, v3));
        next.insert(next.end(), rest.begin() + 3, rest.end());
        rest = std::move(next);
    }
    if (rest.size() == 4) out.push_back(CoonsCell::from_loop({rest[0], rest[1], rest[2], rest[3]}));
    else out.push_back(CoonsCell::from_loop({rest[0], rest[1], rest[2], ParametricCurve::point(rest[0].start())}));
    return out;
}

bool is_unit_square(const CurvedPolygon& d)
{
    if (d.size() != 4) return false;
    const Vec2 corners[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (int k = 0; k < 4; ++k) {
        const auto& e = d.edges()[static_cast<std::size_t>(k)];
        if (e.degree() != 1 || e.rational() || e.kind() == CurveKind::BSpline) return false;
        if (!(e.start() == corners[k]) || !(e.end() == corners[(k + 1) % 4])) return false;
    }
    return true;
}

template <class V>
bool lex_less(const V& a, const V& b)
{
    for (int i = 0; i < V::dim; ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

} // namespace

Decomposition2D quad_dominant_split(const CurvedPolygon& polygon)
{
    Decomposition2D d;
    for (auto& c : quad_cells(polygon)) d.add(std::move(c));
    return d;
}

Decomposition2D triangulate_from_seed(const CurvedPolygon& polygon, Vec2 seed)
{
    Decomposition2D d;
    d.seed = seed;
    for (const auto& e : polygon.edges()) {
        auto cell = CoonsCell::triangle(e, seed);
        if (!is_zero_measure(cell)) d.add(std::move(cell));
    }
    return d;
}

std::vector<SurfacePatch> decompose_face(const ParametricFace& face, const DecomposeOptions& options)
{
    face.require_valid();
    auto surface = std::make_shared<const TensorSurface>(face.surface);
    std::vector<SurfacePatch> out;
    if (is_unit_square(face.domain)) {
        out.emplace_back(surface, std::nullopt, true);
    } else {
        std::vector<CoonsCell> cells;
        if (options.face_split == FaceSplit::QuadDominant) {
            cells = quad_cells(face.domain);
        } else {
            const Vec2 c = face.domain.bounding_box().center();
            for (const auto& e : face.domain.edges()) {
                auto cell = CoonsCell::triangle(e, c);
                if (!is_zero_measure(cell)) cells.push_back(std::move(cell));
            }
        }
        for (auto& c : cells) out.emplace_back(surface, std::move(c), true);
    }
    if (options.fit_degree > 0) {
        for (auto& p : out) {
            const SurfacePatch exact = p;
            p = SurfacePatch(fit_bezier_surface([&](double u, double v) { return exact.eval(u, v); },
                                                options.fit_degree, options.fit_degree));
        }
    }
    return out;
}

Decomposition3D decompose_polyhedron(const CurvedPolyhedron& brep, Vec3 seed, const DecomposeOptions& options)
{
    Decomposition3D d;
    d.seed = seed;
    for (std::size_t i = 0; i < brep.size(); ++i) {
        for (auto& patch : decompose_face(brep.faces()[i], options)) {
            PyramidCell cell(std::move(patch), seed, static_cast<int>(i));
            if (!is_zero_measure(cell)) d.add(std::move(cell), options.classify_samples);
        }
    }
    return d;
}

Vec2 choose_seed_min_cells(const CurvedPolygon& polygon)
{
    const auto candidates = polygon.vertices();
    if (candidates.empty()) throw GeometryError("choose_seed_min_cells: polygon has no vertices");
    Vec2 best = candidates.front();
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (const auto& v : candidates) {
        const std::size_t c = triangulate_from_seed(polygon, v).size();
        if (c < best_count || (c == best_count && lex_less(v, best))) {
            best = v;
            best_count = c;
        }
    }
    return best;
}

Vec3 choose_seed_min_cells(const CurvedPolyhedron& brep, const DecomposeOptions& options)
{
    const auto candidates = brep.vertices();
    if (candidates.empty()) throw GeometryError("choose_seed_min_cells: polyhedron has no vertices");
    // Patches do not depend on the seed; only the zero-measure test does.
    std::vector<SurfacePatch> patches;
    for (const auto& f : brep.faces())
        for (auto& p : decompose_face(f, options)) patches.push_back(std::move(p));
    Vec3 best = candidates.front();
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (const auto& v : candidates) {
        std::size_t c = 0;
        for (const auto& p : patches) c += !is_zero_measure(PyramidCell(p, v));
        if (c < best_count || (c == best_count && lex_less(v, best))) {
            best = v;
            best_count = c;
        }
    }
    return best;
}

std::vector<Vec2> seed_lattice(const Box2& box, int k)
{
    if (k < 2) throw std::invalid_argument("seed_lattice: k must be >= 2");
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(k * k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const double s = static_cast<double>(i) / (k - 1);
            const double t = static_cast<double>(j) / (k - 1);
            out.push_back({box.lo.x + s * (box.hi.x - box.lo.x), box.lo.y + t * (box.hi.y - box.lo.y)});
        }
    return out;
}

std::vector<Vec3> seed_lattice(const Box3& box, int k)
{
    if (k < 2) throw std::invalid_argument("seed_lattice: k must be >= 2");
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(k * k * k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l) {
                const Vec3 f{static_cast<double>(i) / (k - 1), static_cast<double>(j) / (k - 1),
                             static_cast<double>(l) / (k - 1)};
                out.push_back({box.lo.x + f.x * (box.hi.x - box.lo.x), box.lo.y + f.y * (box.hi.y - box.lo.y),
                               box.lo.z + f.z * (box.hi.z - box.lo.z)});
            }
    return out;
}

} // namespace foldquad
