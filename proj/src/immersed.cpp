#include "foldquad/immersed.hpp"

#include "foldquad/errors.hpp"
#include "foldquad/gauss.hpp"
#include "foldquad/intersect.hpp"
#include "foldquad/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace foldquad {

template <class V>
void CartesianGrid<V>::validate() const
{
    for (int k = 0; k < V::dim; ++k) {
        if (!(spacing[k] > 0.0) || !std::isfinite(spacing[k])) throw std::invalid_argument("grid spacing must be positive");
        if (counts[static_cast<std::size_t>(k)] < 1) throw std::invalid_argument("grid counts must be >= 1");
    }
}

template struct CartesianGrid<Vec2>;
template struct CartesianGrid<Vec3>;

std::string_view to_string(ElementClass c)
{
    switch (c) {
    case ElementClass::Trimmed: return "trimmed";
    case ElementClass::ActiveFull: return "full";
    case ElementClass::Inactive: return "inactive";
    }
    return "?";
}

namespace {

double box_scale(const Box2& b) { return std::max(b.hi.x - b.lo.x, b.hi.y - b.lo.y); }

bool in_closed(const Box2& b, Vec2 p, double tol)
{
    return p.x >= b.lo.x - tol && p.x <= b.hi.x + tol && p.y >= b.lo.y - tol && p.y <= b.hi.y + tol;
}

bool strictly_inside(const Box2& b, Vec2 p, double tol)
{
    return p.x > b.lo.x + tol && p.x < b.hi.x - tol && p.y > b.lo.y + tol && p.y < b.hi.y - tol;
}

// Side of the box nearest to p: 0 bottom, 1 right, 2 top, 3 left.
int nearest_side(const Box2& b, Vec2 p)
{
    const double d[4] = {std::abs(p.y - b.lo.y), std::abs(p.x - b.hi.x), std::abs(p.y - b.hi.y), std::abs(p.x - b.lo.x)};
    return static_cast<int>(std::min_element(d, d + 4) - d);
}

// Counterclockwise perimeter coordinate in [0,4): corners at the integers, starting at lo.
double perimeter_param(const Box2& b, Vec2 p)
{
    const double hx = b.hi.x - b.lo.x;
    const double hy = b.hi.y - b.lo.y;
    auto c01 = [](double t) { return std::clamp(t, 0.0, 1.0); };
    switch (nearest_side(b, p)) {
    case 0: return c01((p.x - b.lo.x) / hx);
    case 1: return 1.0 + c01((p.y - b.lo.y) / hy);
    case 2: return 2.0 + c01((b.hi.x - p.x) / hx);
    default: {
        const double s = 3.0 + c01((b.hi.y - p.y) / hy);
        return s >= 4.0 ? 0.0 : s;
    }
    }
}

Vec2 corner(const Box2& b, int k)
{
    switch (((k % 4) + 4) % 4) {
    case 0: return b.lo;
    case 1: return {b.hi.x, b.lo.y};
    case 2: return b.hi;
    default: return {b.lo.x, b.hi.y};
    }
}

Vec2 side_direction(int side)
{
    static const Vec2 dirs[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return dirs[side];
}

// Parameters where a piece meets the box lines inside the closed edge ranges.
std::vector<double> crossings(const ParametricCurve& piece, const Box2& b, double tol)
{
    std::vector<double> ts;
    for (int axis = 0; axis < 2; ++axis) {
        const int other = 1 - axis;
        for (double c : {b.lo[axis], b.hi[axis]}) {
            for (double t : curve_line_params(piece, axis, c)) {
                const Vec2 p = piece.eval(t);
                if (p[other] >= b.lo[other] - tol && p[other] <= b.hi[other] + tol) ts.push_back(t);
            }
        }
    }
    std::sort(ts.begin(), ts.end());
    return ts;
}

bool control_box_meets(const ParametricCurve& piece, const Box2& b, double tol)
{
    return piece.control_box().overlaps(b, tol);
}

struct Fragment {
    ParametricCurve curve;
    bool keep = false;
};

struct AssemblyFailure {
    std::string what;
};

std::vector<ParametricCurve> boundary_path(const Box2& b, Vec2 from, Vec2 to, double tol)
{
    const double s0 = perimeter_param(b, from);
    const double s1 = perimeter_param(b, to);
    double d = s1 - s0;
    if (d < 0.0) d += 4.0;
    if (d > 4.0 - 1e-12) d = 0.0;
    std::vector<Vec2> pts{from};
    for (int k = static_cast<int>(std::floor(s0)) + 1; k < s0 + d; ++k) pts.push_back(corner(b, k));
    pts.push_back(to);
    std::vector<ParametricCurve> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (distance(pts[i], pts[i + 1]) > tol) out.push_back(ParametricCurve::line(pts[i], pts[i + 1]));
    // Endpoints that were skipped leave a gap below tol, which the cells tolerate.
    return out;
}

std::vector<CurvedPolygon> assemble(const Box2& b, const std::vector<ParametricCurve>& pieces, const CurvedPolygon& region,
                                    const TrimOptions& options)
{
    const double h = box_scale(b);
    const double tol = 1e-10 * h;

    std::vector<Fragment> frags;
    for (const auto& piece : pieces) {
        if (!control_box_meets(piece, b, tol)) {
            frags.push_back({piece, false});
            continue;
        }
        std::vector<double> ts{0.0};
        for (double t : crossings(piece, b, tol))
            if (t > ts.back() + 1e-12 && t < 1.0 - 1e-12) ts.push_back(t);
        ts.push_back(1.0);
        for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
            const double a = ts[k];
            const double z = ts[k + 1];
            Vec2 d;
            const Vec2 m = piece.eval(0.5 * (a + z), d);
            bool keep = false;
            if (strictly_inside(b, m, tol)) {
                keep = true;
            } else if (in_closed(b, m, tol)) {
                // On the box boundary: part of K ∩ Ω only when Ω lies on the box side.
                keep = dot(d, side_direction(nearest_side(b, m))) > 0.0;
            }
            frags.push_back({ts.size() == 2 ? piece : piece.subcurve(a, z), keep});
        }
    }

    auto refit = [&](const ParametricCurve& c) {
        if (options.fit_degree <= 0 || (c.degree() == 1 && !c.rational())) return c;
        return fit_bezier_curve(c, 0.0, 1.0, options.fit_degree);
    };

    std::vector<CurvedPolygon> loops;
    const bool all_kept = std::all_of(frags.begin(), frags.end(), [](const Fragment& f) { return f.keep; });
    if (all_kept) {
        std::vector<ParametricCurve> loop;
        for (const auto& f : frags) loop.push_back(refit(f.curve));
        loops.emplace_back(std::move(loop));
        return loops;
    }

    // Runs of kept fragments in cyclic order, starting after a dropped one.
    const std::size_t nf = frags.size();
    std::size_t start = 0;
    while (frags[start].keep) ++start;
    std::vector<std::vector<ParametricCurve>> chains;
    std::vector<ParametricCurve> cur;
    for (std::size_t k = 1; k <= nf; ++k) {
        const auto& f = frags[(start + k) % nf];
        if (f.keep) {
            if (!cur.empty() && distance(cur.back().end(), f.curve.start()) > std::max(tol, region.gap_tolerance())) {
                chains.push_back(std::move(cur));
                cur.clear();
            }
            cur.push_back(f.curve);
        } else if (!cur.empty()) {
            chains.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) chains.push_back(std::move(cur));

    if (chains.empty()) {
        // The boundary does not enter the box: the box is either inside or outside.
        const Vec2 probes[8] = {corner(b, 0), corner(b, 1), corner(b, 2), corner(b, 3),
                                0.5 * (corner(b, 0) + corner(b, 1)), 0.5 * (corner(b, 1) + corner(b, 2)),
                                0.5 * (corner(b, 2) + corner(b, 3)), 0.5 * (corner(b, 3) + corner(b, 0))};
        for (const auto& p : probes) {
            const double w = winding_number(region, p);
            if (std::isnan(w)) continue;
            if (std::abs(w) > 0.5) loops.push_back(CurvedPolygon::rectangle(b.lo, b.hi));
            return loops;
        }
        const double w = winding_number(region, b.center());
        if (!std::isnan(w) && std::abs(w) > 0.5) loops.push_back(CurvedPolygon::rectangle(b.lo, b.hi));
        return loops;
    }

    for (const auto& c : chains) {
        for (const Vec2 p : {c.front().start(), c.back().end()}) {
            if (!in_closed(b, p, 10 * tol) || strictly_inside(b, p, 10 * tol)) {
                std::ostringstream msg;
                msg << "chain end (" << p.x << ", " << p.y << ") is not on the element boundary";
                throw AssemblyFailure{msg.str()};
            }
        }
    }

    std::vector<bool> used(chains.size(), false);
    for (std::size_t first = 0; first < chains.size(); ++first) {
        if (used[first]) continue;
        std::vector<ParametricCurve> loop;
        std::size_t c = first;
        for (std::size_t guard = 0;; ++guard) {
            if (guard > chains.size()) throw AssemblyFailure{"boundary walk does not close"};
            used[c] = true;
            for (const auto& f : chains[c]) loop.push_back(refit(f));
            const Vec2 end = chains[c].back().end();
            const double se = perimeter_param(b, end);
            std::size_t next = chains.size();
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < chains.size(); ++k) {
                if (used[k] && k != first) continue;
                double d = perimeter_param(b, chains[k].front().start()) - se;
                if (d < 0.0) d += 4.0;
                if (d > 4.0 - 1e-12) d = 0.0;
                if (d < best) {
                    best = d;
                    next = k;
                }
            }
            if (next == chains.size()) throw AssemblyFailure{"no chain to continue the boundary walk"};
            for (auto& e : boundary_path(b, end, chains[next].front().start(), tol)) loop.push_back(std::move(e));
            if (next == first) break;
            c = next;
        }
        loops.emplace_back(std::move(loop));
    }

    double area = 0.0;
    for (const auto& l : loops) area += l.signed_area();
    const double a = b.measure();
    if (area < -1e-9 * a || area > a * (1.0 + 1e-9)) {
        std::ostringstream msg;
        msg << "assembled area " << area << " outside [0, " << a << "]";
        throw AssemblyFailure{msg.str()};
    }
    return loops;
}

std::vector<ParametricCurve> boundary_pieces(const CurvedPolygon& region)
{
    std::vector<ParametricCurve> pieces;
    for (const auto& e : region.edges())
        for (auto& p : e.bezier_pieces()) pieces.push_back(forward_bezier(p));
    return pieces;
}

bool box_meets_boundary(const Box2& b, const std::vector<ParametricCurve>& pieces)
{
    const double tol = 1e-10 * box_scale(b);
    for (const auto& piece : pieces) {
        if (!control_box_meets(piece, b, tol)) continue;
        if (in_closed(b, piece.start(), tol) || in_closed(b, piece.end(), tol)) return true;
        if (!crossings(piece, b, tol).empty()) return true;
    }
    return false;
}

bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

} // namespace

std::vector<ElementClass> classify_elements(const CartesianGrid2D& grid, const CurvedPolygon& region, int jobs)
{
    grid.validate();
    const auto pieces = boundary_pieces(region);
    std::vector<ElementClass> out(static_cast<std::size_t>(grid.size()));
    parallel_for(
        out.size(),
        [&](std::size_t i) {
            const Box2 b = grid.element_box(static_cast<long>(i));
            if (box_meets_boundary(b, pieces)) {
                out[i] = ElementClass::Trimmed;
                return;
            }
            const double w = winding_number(region, b.center());
            out[i] = (!std::isnan(w) && std::abs(w) > 0.5) ? ElementClass::ActiveFull : ElementClass::Inactive;
        },
        jobs);
    return out;
}

TrimmedElement trim_element_2d(const Box2& box, const CurvedPolygon& region, const TrimOptions& options, long element_id)
{
    const auto pieces = boundary_pieces(region);
    TrimmedElement e;
    e.element_id = element_id;
    try {
        e.loops = assemble(box, pieces, region, options);
        return e;
    } catch (const AssemblyFailure&) {
    }
    Box2 shrunk = box;
    const double d = 1e-10 * box_scale(box);
    shrunk.lo += Vec2{d, d};
    shrunk.hi -= Vec2{d, d};
    try {
        e.loops = assemble(shrunk, pieces, region, options);
        return e;
    } catch (const AssemblyFailure& f) {
        std::ostringstream msg;
        msg << "trimming element " << element_id << " [" << box.lo.x << ", " << box.hi.x << "] x [" << box.lo.y << ", "
            << box.hi.y << "] failed after retry: " << f.what;
        throw GeometryError(msg.str());
    }
}

double trimmed_area(const TrimmedElement& e)
{
    double a = 0.0;
    for (const auto& l : e.loops) a += l.signed_area();
    return a;
}

SeedStrategy SeedStrategy::parse(const std::string& text)
{
    SeedStrategy s;
    if (text == "min-cells") return s;
    if (text == "point") {
        s.kind = Kind::Point;
        return s;
    }
    if (text == "quad-dominant") {
        s.kind = Kind::QuadDominant;
        return s;
    }
    if (text.rfind("vertex:", 0) == 0) {
        s.kind = Kind::Vertex;
        try {
            std::size_t used = 0;
            s.vertex = std::stoi(text.substr(7), &used);
            if (used != text.size() - 7 || s.vertex < 0) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad seed strategy: " + text);
        }
        return s;
    }
    throw std::invalid_argument("bad seed strategy: " + text + " (expected min-cells, vertex:<i>, point, quad-dominant)");
}

Decomposition2D triangulate_loops(const std::vector<CurvedPolygon>& loops, Vec2 seed)
{
    Decomposition2D d;
    d.seed = seed;
    for (const auto& l : loops) {
        auto part = triangulate_from_seed(l, seed);
        for (std::size_t i = 0; i < part.size(); ++i) {
            d.cells.push_back(std::move(part.cells[i]));
            d.signs.push_back(part.signs[i]);
        }
    }
    return d;
}

Decomposition2D decompose_trimmed(const TrimmedElement& e, const SeedStrategy& strategy)
{
    std::vector<Vec2> vertices;
    for (const auto& l : e.loops)
        for (const auto& v : l.vertices()) vertices.push_back(v);
    if (vertices.empty()) return {};
    switch (strategy.kind) {
    case SeedStrategy::Kind::Point: return triangulate_loops(e.loops, strategy.point);
    case SeedStrategy::Kind::Vertex:
        return triangulate_loops(e.loops, vertices[static_cast<std::size_t>(strategy.vertex) % vertices.size()]);
    case SeedStrategy::Kind::QuadDominant: {
        Decomposition2D d;
        for (const auto& l : e.loops) {
            CurvedPolygon loop = l;
            if (loop.size() < 3) {
                std::vector<ParametricCurve> edges;
                const auto& first = loop.edges().front();
                edges.push_back(first.subcurve(0.0, 0.5));
                edges.push_back(first.subcurve(0.5, 1.0));
                for (std::size_t k = 1; k < loop.size(); ++k) edges.push_back(loop.edges()[k]);
                loop = CurvedPolygon(std::move(edges));
            }
            auto part = quad_dominant_split(loop);
            for (std::size_t i = 0; i < part.size(); ++i) {
                d.cells.push_back(std::move(part.cells[i]));
                d.signs.push_back(part.signs[i]);
            }
        }
        return d;
    }
    case SeedStrategy::Kind::MinCells: break;
    }
    Vec2 best = vertices.front();
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (const auto& v : vertices) {
        std::size_t c = 0;
        for (const auto& l : e.loops)
            for (const auto& edge : l.edges()) c += !is_zero_measure(CoonsCell::triangle(edge, v));
        if (c < best_count || (c == best_count && lex_less(v, best))) {
            best = v;
            best_count = c;
        }
    }
    return triangulate_loops(e.loops, best);
}

std::vector<TrimmedElement> trimmed_elements(const CartesianGrid2D& grid, const CurvedPolygon& region,
                                             const std::vector<ElementClass>& classes, const TrimOptions& options,
                                             int jobs)
{
    std::vector<long> ids;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i] == ElementClass::Trimmed) ids.push_back(static_cast<long>(i));
    std::vector<TrimmedElement> out(ids.size());
    parallel_for(
        ids.size(), [&](std::size_t k) { out[k] = trim_element_2d(grid.element_box(ids[k]), region, options, ids[k]); },
        jobs);
    return out;
}

namespace {

bool on_box_side(const ParametricCurve& c, const Box2& box)
{
    const double tol = 1e-12 * box.diameter();
    for (int k = 0; k < 2; ++k)
        for (double side : {box.lo[k], box.hi[k]}) {
            bool all = true;
            for (const auto& q : c.control_points()) all = all && std::abs(q[k] - side) <= tol;
            if (all) return true;
        }
    return false;
}

} // namespace

std::vector<TrimmedElement> settle_classes(const CartesianGrid2D& grid, std::vector<ElementClass>& classes,
                                           std::vector<TrimmedElement> elements)
{
    std::vector<TrimmedElement> kept;
    for (auto& e : elements) {
        const Box2 box = grid.element_box(e.element_id);
        auto& cls = classes[static_cast<std::size_t>(e.element_id)];
        if (e.loops.empty()) {
            cls = ElementClass::Inactive;
            continue;
        }
        bool sides = true;
        for (const auto& l : e.loops)
            for (const auto& c : l.edges()) sides = sides && on_box_side(c, box);
        if (sides && std::abs(trimmed_area(e) - box.measure()) <= 1e-12 * box.measure()) {
            cls = ElementClass::ActiveFull;
            continue;
        }
        kept.push_back(std::move(e));
    }
    return kept;
}

namespace {

// All (p+1)^2 Bernstein functions of a box at once.
struct BernsteinBasis2 {
    Box2 box;
    int p;

    void operator()(const Vec2& x, double* out) const
    {
        thread_local std::vector<double> bu, bv;
        bu.resize(static_cast<std::size_t>(p) + 1);
        bv.resize(static_cast<std::size_t>(p) + 1);
        basis::bernstein(p, (x.x - box.lo.x) / (box.hi.x - box.lo.x), bu);
        basis::bernstein(p, (x.y - box.lo.y) / (box.hi.y - box.lo.y), bv);
        for (int i = 0; i <= p; ++i)
            for (int j = 0; j <= p; ++j) out[i * (p + 1) + j] = bu[static_cast<std::size_t>(i)] * bv[static_cast<std::size_t>(j)];
    }
};

template <class D, class B>
double relative_error(const D& d, const B& basis, std::size_t m, int n)
{
    std::vector<CompensatedSum> h(m), ref(m);
    for (const auto& cell : d.cells) {
        const auto a = integrate_cell_multi(cell, basis, m, n);
        const auto r = integrate_cell_multi(cell, basis, m, kReferencePoints);
        for (std::size_t i = 0; i < m; ++i) {
            h[i].add(a[i]);
            ref[i].add(r[i]);
        }
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        num = std::max(num, std::abs(h[i].value() - ref[i].value()));
        den = std::max(den, std::abs(ref[i].value()));
    }
    return den > 0.0 ? num / den : num;
}

} // namespace

BernsteinErrors bernstein_integral_errors(const CartesianGrid2D& grid, const std::vector<TrimmedElement>& elements,
                                          int p, int n, const SeedStrategy& strategy, int sweep_k, int jobs)
{
    if (p < 0) throw std::invalid_argument("p must be >= 0");
    if (n < 1 || n > 64) throw std::invalid_argument("n must be in [1, 64]");
    const std::size_t m = static_cast<std::size_t>((p + 1) * (p + 1));
    const std::size_t seeds = sweep_k >= 2 ? static_cast<std::size_t>(sweep_k * sweep_k) : 1;
    std::vector<double> errs(elements.size() * seeds, 0.0);
    std::vector<std::size_t> cells(elements.size() * seeds, 0);
    parallel_for(
        errs.size(),
        [&](std::size_t task) {
            const auto& e = elements[task / seeds];
            const Box2 box = grid.element_box(e.element_id);
            Decomposition2D d;
            if (sweep_k >= 2)
                d = triangulate_loops(e.loops, seed_lattice(box, sweep_k)[task % seeds]);
            else
                d = decompose_trimmed(e, strategy);
            cells[task] = d.size();
            errs[task] = relative_error(d, BernsteinBasis2{box, p}, m, n);
        },
        jobs);
    BernsteinErrors out;
    for (std::size_t k = 0; k < elements.size(); ++k) {
        ElementError ee{elements[k].element_id, 0, 0.0};
        for (std::size_t s = 0; s < seeds; ++s) {
            if (errs[k * seeds + s] >= ee.err) {
                ee.err = errs[k * seeds + s];
                ee.cells = cells[k * seeds + s];
            }
        }
        out.err = std::max(out.err, ee.err);
        out.elements.push_back(ee);
    }
    return out;
}

double bernstein_integral_error_3d(const Box3& box, const Decomposition3D& d, int p, int n)
{
    const std::size_t m = static_cast<std::size_t>((p + 1) * (p + 1) * (p + 1));
    auto basis = [&](const Vec3& x, double* out) {
        thread_local std::vector<double> bu, bv, bw;
        bu.resize(static_cast<std::size_t>(p) + 1);
        bv.resize(static_cast<std::size_t>(p) + 1);
        bw.resize(static_cast<std::size_t>(p) + 1);
        basis::bernstein(p, (x.x - box.lo.x) / (box.hi.x - box.lo.x), bu);
        basis::bernstein(p, (x.y - box.lo.y) / (box.hi.y - box.lo.y), bv);
        basis::bernstein(p, (x.z - box.lo.z) / (box.hi.z - box.lo.z), bw);
        std::size_t k = 0;
        for (double a : bu)
            for (double b : bv)
                for (double c : bw) out[k++] = a * b * c;
    };
    return relative_error(d, basis, m, n);
}

CoonsCell box_cell(const Box2& box)
{
    const Vec2 a = box.lo, b{box.hi.x, box.lo.y}, c = box.hi, d{box.lo.x, box.hi.y};
    return CoonsCell::from_loop(
        {ParametricCurve::line(a, b), ParametricCurve::line(b, c), ParametricCurve::line(c, d), ParametricCurve::line(d, a)});
}

double integrate_immersed(const CartesianGrid2D& grid, const std::vector<ElementClass>& classes,
                          const std::vector<TrimmedElement>& elements, const Field2& f, int n,
                          const SeedStrategy& strategy, int jobs)
{
    std::vector<const TrimmedElement*> by_id(classes.size(), nullptr);
    for (const auto& e : elements) by_id[static_cast<std::size_t>(e.element_id)] = &e;
    std::vector<double> parts(classes.size(), 0.0);
    parallel_for(
        classes.size(),
        [&](std::size_t i) {
            if (classes[i] == ElementClass::ActiveFull) {
                parts[i] = integrate_cell(box_cell(grid.element_box(static_cast<long>(i))), f, n);
            } else if (classes[i] == ElementClass::Trimmed) {
                if (!by_id[i]) throw std::logic_error("trimmed element without a region");
                parts[i] = integrate_decomposition(decompose_trimmed(*by_id[i], strategy), f, n);
            }
        },
        jobs);
    CompensatedSum s;
    for (double p : parts) s.add(p);
    return s.value();
}

QuadratureTable immersed_table(const CartesianGrid2D& grid, const std::vector<ElementClass>& classes,
                               const std::vector<TrimmedElement>& elements, int n, const SeedStrategy& strategy)
{
    std::vector<const TrimmedElement*> by_id(classes.size(), nullptr);
    for (const auto& e : elements) by_id[static_cast<std::size_t>(e.element_id)] = &e;
    std::vector<std::pair<long, Decomposition2D>> parts;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i] == ElementClass::ActiveFull) {
            Decomposition2D d;
            d.add(box_cell(grid.element_box(static_cast<long>(i))));
            parts.emplace_back(static_cast<long>(i), std::move(d));
        } else if (classes[i] == ElementClass::Trimmed && by_id[i]) {
            parts.emplace_back(static_cast<long>(i), decompose_trimmed(*by_id[i], strategy));
        }
    }
    return export_table(parts, n);
}

} // namespace foldquad
