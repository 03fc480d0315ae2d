#include "foldquad/verify.hpp"

#include "foldquad/decomp.hpp"
#include "foldquad/errors.hpp"
#include "foldquad/intersect.hpp"
#include "foldquad/parallel.hpp"
#include "foldquad/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

namespace foldquad {

bool VerifyReport::passed() const
{
    if (checks.empty()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ran && c.passed; });
}

namespace {

CheckResult skipped(const std::string& name, double tol)
{
    CheckResult c;
    c.name = name;
    c.tolerance = tol;
    c.detail = "not run: orientation check failed";
    return c;
}

std::string fmt(double x)
{
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << x;
    return s.str();
}

template <class D>
struct NamedDecomposition {
    std::string name;
    D d;
};

// Relative errors against the boundary integral plus the largest pairwise disagreement.
template <class D, class Poly, class BoundaryFn>
std::pair<CheckResult, CheckResult> equivalence(const std::vector<NamedDecomposition<D>>& ds, Poly poly, int max_p,
                                                const std::function<int(int)>& points, BoundaryFn boundary,
                                                double tol, std::uint32_t seed, int jobs)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coeff(0.5, 1.5);
    CheckResult eq{"divergence_equivalence", true, true, 0.0, tol, ""};
    CheckResult inv{"seed_invariance", true, true, 0.0, tol, ""};
    std::string worst_eq, worst_inv;
    for (int p = 0; p <= max_p; ++p) {
        poly.p = p;
        std::size_t count = 1;
        for (int k = 0; k < decltype(poly.box.lo)::dim; ++k) count *= static_cast<std::size_t>(p + 1);
        poly.coeffs.resize(count);
        for (auto& c : poly.coeffs) c = coeff(rng);
        const auto F = poly.antiderivative();
        const double ref = boundary(F);
        const int n = points(p);
        std::vector<double> vals;
        for (const auto& nd : ds) {
            const double v = integrate_decomposition(nd.d, F.f, n, jobs);
            vals.push_back(v);
            const double e = std::abs(v - ref) / std::abs(ref);
            if (!(e <= eq.value) ) {
                eq.value = std::isnan(e) ? e : std::max(eq.value, e);
                worst_eq = nd.name + " at p=" + std::to_string(p) + ", n=" + std::to_string(n);
            }
        }
        for (std::size_t a = 0; a < vals.size(); ++a)
            for (std::size_t b = a + 1; b < vals.size(); ++b) {
                const double e = std::abs(vals[a] - vals[b]) / std::abs(ref);
                if (!(e <= inv.value)) {
                    inv.value = std::isnan(e) ? e : std::max(inv.value, e);
                    worst_inv = ds[a].name + " vs " + ds[b].name + " at p=" + std::to_string(p);
                }
            }
    }
    eq.passed = eq.value <= tol;
    inv.passed = inv.value <= tol;
    std::string names;
    for (const auto& nd : ds) names += (names.empty() ? "" : ", ") + nd.name;
    eq.detail = "decompositions: " + names + "; degrees 0.." + std::to_string(max_p) +
                (worst_eq.empty() ? "" : "; worst: " + worst_eq);
    inv.detail = worst_inv.empty() ? "all pairs identical" : "worst: " + worst_inv;
    return {eq, inv};
}

template <class V, class D, class Inside>
CheckResult coverage(const D& d, const Box<V>& box, int samples, double filter, Inside inside, std::uint32_t seed,
                     int jobs)
{
    CheckResult c{"signed_coverage", true, false, 0.0, 0.0, ""};
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-0.2, 1.2);
    std::vector<V> pts;
    const int max_attempts = 100 * samples;
    int attempts = 0;
    // Candidates are drawn in blocks so the expensive filter runs in parallel.
    while (static_cast<int>(pts.size()) < samples && attempts < max_attempts) {
        std::vector<V> block(static_cast<std::size_t>(samples));
        for (auto& x : block)
            for (int k = 0; k < V::dim; ++k) x[k] = box.lo[k] + u(rng) * (box.hi[k] - box.lo[k]);
        attempts += samples;
        std::vector<char> keep(block.size());
        parallel_for(block.size(), [&](std::size_t i) { keep[i] = distance_to_cell_boundaries(block[i], d) > filter; }, jobs);
        for (std::size_t i = 0; i < block.size() && static_cast<int>(pts.size()) < samples; ++i)
            if (keep[i]) pts.push_back(block[i]);
    }
    std::vector<int> bad(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { bad[i] = signed_count(pts[i], d) != (inside(pts[i]) ? 1 : 0); }, jobs);
    int violations = 0;
    for (int b : bad) violations += b;
    c.value = violations;
    c.passed = violations == 0 && static_cast<int>(pts.size()) == samples;
    c.detail = std::to_string(pts.size()) + " filtered samples of the exterior-seed decomposition, " +
               std::to_string(violations) + " violations";
    return c;
}

int polygon_degree(const CurvedPolygon& p, bool& rational)
{
    int q = 1;
    rational = false;
    for (const auto& e : p.edges()) {
        q = std::max(q, e.degree());
        rational = rational || e.rational();
    }
    return q;
}

template <class V>
V exterior_seed(const Box<V>& b)
{
    V s = b.lo;
    const double off[3] = {0.37, 0.61, 0.23};
    for (int k = 0; k < V::dim; ++k) s[k] -= off[k] * b.diameter();
    return s;
}

} // namespace

Vec2 interior_point(const CurvedPolygon& region, int k)
{
    const Box2 b = region.bounding_box();
    Vec2 best = b.center();
    double best_d = -1.0;
    for (const Vec2& x : seed_lattice(b, k)) {
        const double w = winding_number(region, x);
        if (!(std::abs(w - 1.0) < 0.5)) continue;
        double d = std::numeric_limits<double>::infinity();
        for (const auto& e : region.edges()) d = std::min(d, distance_to_curve(e, x));
        if (d > best_d) {
            best_d = d;
            best = x;
        }
    }
    if (best_d < 0.0) throw GeometryError("no interior point found on a " + std::to_string(k) + "^2 lattice");
    return best;
}

Vec3 interior_point(const CurvedPolyhedron& region, int k)
{
    const Box3 b = region.bounding_box();
    // Boundary samples: face points on a parameter lattice that fall inside the face domain.
    std::vector<Vec3> surface;
    for (const auto& f : region.faces())
        for (const Vec2& uv : seed_lattice(Box2{{0, 0}, {1, 1}, false}, 24))
            if (std::abs(winding_number(f.domain, uv)) > 0.5 || std::isnan(winding_number(f.domain, uv)))
                surface.push_back(f.eval(uv.x, uv.y));
    Vec3 best = b.center();
    double best_d = -1.0;
    for (const Vec3& x : seed_lattice(b, k)) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& s : surface) d = std::min(d, distance(s, x));
        if (d <= best_d) continue;
        if (!(std::abs(generalized_winding_number(region, x) - 1.0) < 0.5)) continue;
        best_d = d;
        best = x;
    }
    if (best_d < 0.0) throw GeometryError("no interior point found on a " + std::to_string(k) + "^3 lattice");
    return best;
}

VerifyReport verify_polygon(const CurvedPolygon& region, const VerifyOptions& o, const std::optional<DenseRegion2D>& dense)
{
    VerifyReport r;
    r.dimension = 2;
    CheckResult orient{"orientation", true, false, 0.0, 0.0, ""};
    try {
        region.require_valid();
        orient.passed = true;
        orient.value = region.signed_area();
        orient.detail = "closed counterclockwise loop of " + std::to_string(region.size()) + " edges, area " +
                        fmt(orient.value);
    } catch (const GeometryError& e) {
        orient.detail = e.what();
    }
    r.checks.push_back(orient);
    if (!orient.passed) {
        for (const auto& name : {"divergence_equivalence", "seed_invariance"}) r.checks.push_back(skipped(name, o.equivalence_tol));
        r.checks.push_back(skipped("signed_coverage", 0.0));
        r.checks.push_back(skipped("oracle_consistency", o.dense_tol));
        return r;
    }

    const auto seg = region.bezier_segmented();
    const Box2 box = region.bounding_box();
    bool rational = false;
    const int q = polygon_degree(seg, rational);
    std::vector<NamedDecomposition<Decomposition2D>> ds;
    ds.push_back({"quad-dominant", quad_dominant_split(seg)});
    ds.push_back({"interior-seed", triangulate_from_seed(seg, interior_point(region))});
    ds.push_back({"exterior-seed", triangulate_from_seed(seg, exterior_seed(box))});
    ds.push_back({"vertex-seed", triangulate_from_seed(seg, choose_seed_min_cells(seg))});
    // Rational edges have no finite exactness degree; 30 points resolve them to round-off.
    auto points = [&](int p) { return rational ? 30 : q * (p + 1) + 2; };
    auto [eq, inv] = equivalence(ds, BernsteinPolynomial2{box, 0, {}}, o.max_degree, points,
                                 [&](const Antiderivative2& F) { return boundary_integral(region, F, 64); },
                                 o.equivalence_tol, o.seed, o.jobs);
    r.checks.push_back(eq);
    r.checks.push_back(inv);

    r.checks.push_back(coverage(ds[2].d, box, o.samples, 1e-3 * box.diameter(),
                                [&](const Vec2& x) { return std::abs(winding_number(region, x)) > 0.5; }, o.seed + 1,
                                o.jobs));

    CheckResult dc{"oracle_consistency", true, false, 0.0, o.dense_tol, ""};
    const double area = boundary_measure(region);
    const double v = dense_reference(dense ? *dense : dense_region(region), [](const Vec2&) { return 1.0; }, o.dense_m,
                                     o.dense_depth, 4, o.jobs);
    dc.value = std::abs(v - area) / std::abs(area);
    dc.passed = dc.value <= dc.tolerance;
    dc.detail = "dense area " + fmt(v) + " (m=" + std::to_string(o.dense_m) + ", depth " + std::to_string(o.dense_depth) +
                ") vs boundary area " + fmt(area);
    r.checks.push_back(dc);
    return r;
}

VerifyReport verify_polyhedron(const CurvedPolyhedron& region, const VerifyOptions& o,
                               const std::optional<DenseRegion3D>& dense)
{
    VerifyReport r;
    r.dimension = 3;
    CheckResult orient{"orientation", true, false, 0.0, 0.0, ""};
    try {
        if (region.empty()) throw GeometryError("polyhedron has no faces");
        std::size_t k = 0;
        for (const auto& f : region.faces()) {
            try {
                f.require_valid();
            } catch (const GeometryError& e) {
                throw GeometryError("face " + std::to_string(k) + ": " + e.what());
            }
            ++k;
        }
        require_outward_closed(region);
        orient.passed = true;
        orient.value = boundary_measure(region);
        orient.detail = "closed outward B-rep of " + std::to_string(region.size()) + " faces, volume " + fmt(orient.value);
    } catch (const GeometryError& e) {
        orient.detail = e.what();
    }
    r.checks.push_back(orient);
    if (!orient.passed) {
        for (const auto& name : {"divergence_equivalence", "seed_invariance"})
            r.checks.push_back(skipped(name, o.equivalence_tol_3d));
        r.checks.push_back(skipped("signed_coverage", 0.0));
        r.checks.push_back(skipped("oracle_consistency", o.dense_tol_3d));
        return r;
    }

    const Box3 box = region.bounding_box();
    std::vector<NamedDecomposition<Decomposition3D>> ds;
    ds.push_back({"interior-seed", decompose_polyhedron(region, interior_point(region))});
    ds.push_back({"exterior-seed", decompose_polyhedron(region, exterior_seed(box))});
    ds.push_back({"vertex-seed", decompose_polyhedron(region, choose_seed_min_cells(region))});
    auto [eq, inv] = equivalence(ds, BernsteinPolynomial3{box, 0, {}}, std::min(o.max_degree, 2),
                                 [](int) { return 16; },
                                 [&](const Antiderivative3& F) { return boundary_integral(region, F, 24); },
                                 o.equivalence_tol_3d, o.seed, o.jobs);
    r.checks.push_back(eq);
    r.checks.push_back(inv);

    const auto inside = dense ? dense->inside
                              : std::function<bool(const Vec3&)>([&](const Vec3& x) {
                                    return std::abs(generalized_winding_number(region, x)) > 0.5;
                                });
    r.checks.push_back(coverage(ds[1].d, box, o.samples_3d, 1e-3 * box.diameter(), inside, o.seed + 1, o.jobs));

    const int m = dense ? o.dense_m_3d : std::max(1, o.dense_m_3d / 2);
    CheckResult dc{"oracle_consistency", true, false, 0.0, dense ? o.dense_tol_3d : 10.0 * o.dense_tol_3d, ""};
    const double vol = boundary_measure(region);
    const double v = dense_reference(dense ? *dense : dense_region(region), [](const Vec3&) { return 1.0; }, m,
                                     o.dense_depth_3d, 4, o.jobs);
    dc.value = std::abs(v - vol) / std::abs(vol);
    dc.passed = dc.value <= dc.tolerance;
    dc.detail = "dense volume " + fmt(v) + " (m=" + std::to_string(m) + ", depth " + std::to_string(o.dense_depth_3d) +
                ") vs boundary volume " + fmt(vol);
    r.checks.push_back(dc);
    return r;
}

} // namespace foldquad
