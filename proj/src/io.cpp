#include "foldquad/io.hpp"

#include "foldquad/errors.hpp"
#include "foldquad/oracle.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace foldquad::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw SchemaError(path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing '") + key + "'");
    return *it;
}

const json* optional_field(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return nullptr;
    return &*it;
}

double number(const json& j, const std::string& path)
{
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& path)
{
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

std::string text(const json& j, const std::string& path)
{
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

const json& array(const json& j, const std::string& path)
{
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

std::vector<double> numbers(const json& j, const std::string& path)
{
    std::vector<double> out;
    std::size_t i = 0;
    for (const auto& v : array(j, path)) out.push_back(number(v, path + "/" + std::to_string(i++)));
    return out;
}

template <class V>
V point(const json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != static_cast<std::size_t>(V::dim))
        fail(path, "expected " + std::to_string(V::dim) + " coordinates");
    V p;
    for (int k = 0; k < V::dim; ++k) p[k] = number(j[static_cast<std::size_t>(k)], path);
    return p;
}

template <class V>
std::vector<V> points(const json& j, const std::string& path)
{
    std::vector<V> out;
    std::size_t i = 0;
    for (const auto& v : array(j, path)) out.push_back(point<V>(v, path + "/" + std::to_string(i++)));
    return out;
}

template <class V>
json point_json(const V& p)
{
    json a = json::array();
    for (int k = 0; k < V::dim; ++k) a.push_back(p[k]);
    return a;
}

// Constructors report bad degrees or knots as GeometryError; in a document those are schema faults.
template <class Fn>
auto build(const std::string& path, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

ParametricCurve read_curve(const json& j, const std::string& path)
{
    const auto kind = build(path, [&] { return curve_kind_from_string(text(field(j, "kind", path), path + "/kind")); });
    auto ctrl = points<Vec2>(field(j, "control_points", path), path + "/control_points");
    ParametricCurve c = build(path, [&] {
        switch (kind) {
        case CurveKind::Bezier: return ParametricCurve::bezier(ctrl);
        case CurveKind::RationalBezier:
            return ParametricCurve::rational_bezier(ctrl, numbers(field(j, "weights", path), path + "/weights"));
        case CurveKind::BSpline:
            return ParametricCurve::bspline(integer(field(j, "degree", path), path + "/degree"),
                                            numbers(field(j, "knots", path), path + "/knots"), ctrl);
        }
        fail(path, "unknown curve kind");
    });
    if (const json* d = optional_field(j, "degree"); d && integer(*d, path + "/degree") != c.degree())
        fail(path, "degree does not match the control points");
    std::string orient = "forward";
    if (const json* o = optional_field(j, "orientation")) orient = text(*o, path + "/orientation");
    if (orient == "reversed") return c.reverse();
    if (orient != "forward") fail(path + "/orientation", "expected 'forward' or 'reversed'");
    return c;
}

TensorSurface read_surface(const json& j, const std::string& path)
{
    const auto kind = build(path, [&] { return curve_kind_from_string(text(field(j, "kind", path), path + "/kind")); });
    const json& deg = field(j, "degree", path);
    if (!deg.is_array() || deg.size() != 2) fail(path + "/degree", "expected [degree_u, degree_v]");
    const int du = integer(deg[0], path + "/degree/0");
    const int dv = integer(deg[1], path + "/degree/1");
    auto net = points<Vec3>(field(j, "control_points", path), path + "/control_points");
    TensorSurface s = build(path, [&] {
        switch (kind) {
        case CurveKind::Bezier: return TensorSurface::bezier(du, dv, net);
        case CurveKind::RationalBezier:
            return TensorSurface::rational_bezier(du, dv, net, numbers(field(j, "weights", path), path + "/weights"));
        case CurveKind::BSpline:
            return TensorSurface::bspline(du, dv, numbers(field(j, "knots_u", path), path + "/knots_u"),
                                          numbers(field(j, "knots_v", path), path + "/knots_v"), net);
        }
        fail(path, "unknown surface kind");
    });
    if (const json* c = optional_field(j, "count")) {
        if (!c->is_array() || c->size() != 2 || integer((*c)[0], path + "/count") != s.count_u() ||
            integer((*c)[1], path + "/count") != s.count_v())
            fail(path + "/count", "does not match the control net");
    }
    return s;
}

CurvedPolygon read_polygon(const json& j, const std::string& path)
{
    std::vector<ParametricCurve> edges;
    const std::string p = path + "/edges";
    std::size_t i = 0;
    for (const auto& e : array(field(j, "edges", path), p)) edges.push_back(read_curve(e, p + "/" + std::to_string(i++)));
    if (edges.empty()) fail(p, "empty loop");
    return CurvedPolygon(std::move(edges));
}

ParametricFace read_face(const json& j, const std::string& path)
{
    auto s = read_surface(field(j, "surface", path), path + "/surface");
    if (const json* d = optional_field(j, "domain")) return {std::move(s), read_polygon(*d, path + "/domain")};
    return ParametricFace::untrimmed(std::move(s));
}

CurvedPolyhedron read_polyhedron(const json& j, const std::string& path)
{
    std::vector<ParametricFace> faces;
    const std::string p = path + "/faces";
    std::size_t i = 0;
    for (const auto& f : array(field(j, "faces", path), p)) faces.push_back(read_face(f, p + "/" + std::to_string(i++)));
    if (faces.empty()) fail(p, "no faces");
    return CurvedPolyhedron(std::move(faces));
}

CoonsCell read_coons(const json& j, const std::string& path)
{
    const json& e = field(j, "edges", path);
    if (!e.is_array() || e.size() != 4) fail(path + "/edges", "expected four edges");
    std::array<ParametricCurve, 4> loop{read_curve(e[0], path + "/edges/0"), read_curve(e[1], path + "/edges/1"),
                                        read_curve(e[2], path + "/edges/2"), read_curve(e[3], path + "/edges/3")};
    return build(path, [&] { return CoonsCell::from_loop(loop); });
}

PyramidCell read_pyramid(const json& j, const std::string& path)
{
    const Vec3 apex = point<Vec3>(field(j, "apex", path), path + "/apex");
    const json& b = field(j, "base", path);
    const std::string bp = path + "/base";
    auto surface = std::make_shared<const TensorSurface>(read_surface(field(b, "surface", bp), bp + "/surface"));
    std::optional<int> face;
    if (const json* f = optional_field(j, "source_face")) face = integer(*f, path + "/source_face");
    bool fitted = false;
    if (const json* f = optional_field(b, "fitted")) fitted = f->is_boolean() && f->get<bool>();
    if (fitted) return PyramidCell(SurfacePatch(*surface), apex, face);
    std::optional<CoonsCell> reparam;
    if (const json* r = optional_field(b, "reparam")) reparam = read_coons(*r, bp + "/reparam");
    bool transpose = false;
    if (const json* t = optional_field(b, "transpose")) {
        if (!t->is_boolean()) fail(bp + "/transpose", "expected a boolean");
        transpose = t->get<bool>();
    }
    return PyramidCell(SurfacePatch(surface, std::move(reparam), transpose), apex, face);
}

template <class D, class ReadCell>
D read_decomposition(const json& j, const std::string& path, ReadCell&& read)
{
    D d;
    const std::string p = path + "/cells";
    std::size_t i = 0;
    // Sign classes are recomputed rather than trusted.
    for (const auto& c : array(field(j, "cells", path), p)) d.add(read(c, p + "/" + std::to_string(i++)));
    if (const json* s = optional_field(j, "seed")) d.seed = point<typename D::Point>(*s, path + "/seed");
    return d;
}

template <class D>
json decomposition_json(const D& d)
{
    json cells = json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
        json c = to_json(d.cells[i]);
        c["sign_class"] = to_json(d.signs[i]);
        cells.push_back(std::move(c));
    }
    json out;
    out["dimension"] = D::Point::dim;
    out["kind"] = std::string(to_string(d.kind()));
    out["seed"] = d.seed ? point_json(*d.seed) : json(nullptr);
    out["summary"] = {{"cells", d.size()},
                      {"jplus", d.count(SignKind::Jplus)},
                      {"jminus", d.count(SignKind::Jminus)},
                      {"folded", d.count(SignKind::Folded)},
                      {"unknown", d.count(SignKind::Unknown)}};
    out["cells"] = std::move(cells);
    return out;
}

} // namespace

json to_json(const ParametricCurve& c)
{
    json j;
    j["kind"] = std::string(to_string(c.kind()));
    j["degree"] = c.degree();
    json pts = json::array();
    for (const auto& p : c.control_points()) pts.push_back(point_json(p));
    j["control_points"] = std::move(pts);
    if (c.rational()) j["weights"] = c.weights();
    if (c.kind() == CurveKind::BSpline) j["knots"] = c.knots();
    j["orientation"] = c.reversed() ? "reversed" : "forward";
    return j;
}

json to_json(const TensorSurface& s)
{
    json j;
    j["kind"] = std::string(to_string(s.kind()));
    j["degree"] = {s.degree_u(), s.degree_v()};
    j["count"] = {s.count_u(), s.count_v()};
    json pts = json::array();
    for (const auto& p : s.control_points()) pts.push_back(point_json(p));
    j["control_points"] = std::move(pts);
    if (s.rational()) j["weights"] = s.weights();
    if (s.kind() == CurveKind::BSpline) {
        j["knots_u"] = s.knots_u();
        j["knots_v"] = s.knots_v();
    }
    return j;
}

json to_json(const CurvedPolygon& p)
{
    json edges = json::array();
    for (const auto& e : p.edges()) edges.push_back(to_json(e));
    return {{"edges", std::move(edges)}};
}

json to_json(const ParametricFace& f) { return {{"surface", to_json(f.surface)}, {"domain", to_json(f.domain)}}; }

json to_json(const CurvedPolyhedron& b)
{
    json faces = json::array();
    for (const auto& f : b.faces()) faces.push_back(to_json(f));
    return {{"faces", std::move(faces)}};
}

json to_json(const SignClass& s)
{
    return {{"kind", std::string(to_string(s.kind))}, {"min_jac", s.min_jac}, {"max_jac", s.max_jac}, {"samples", s.samples}};
}

json to_json(const CoonsCell& c)
{
    json edges = json::array();
    for (const auto& e : c.loop()) edges.push_back(to_json(e));
    return {{"mapping", "coons"}, {"edges", std::move(edges)}};
}

json to_json(const SurfacePatch& p)
{
    json j;
    j["surface"] = to_json(p.surface());
    if (p.is_fitted()) {
        j["fitted"] = true;
        return j;
    }
    j["reparam"] = p.reparam() ? to_json(*p.reparam()) : json(nullptr);
    j["transpose"] = p.transpose();
    return j;
}

json to_json(const PyramidCell& c)
{
    json j;
    j["mapping"] = "pyramid";
    j["apex"] = point_json(c.apex());
    j["base"] = to_json(c.base());
    j["source_face"] = c.source_face() ? json(*c.source_face()) : json(nullptr);
    return j;
}

json to_json(const Decomposition2D& d) { return decomposition_json(d); }
json to_json(const Decomposition3D& d) { return decomposition_json(d); }

ParametricCurve curve_from_json(const json& j) { return read_curve(j, "$"); }
TensorSurface surface_from_json(const json& j) { return read_surface(j, "$"); }
CurvedPolygon polygon_from_json(const json& j) { return read_polygon(j, "$"); }
ParametricFace face_from_json(const json& j) { return read_face(j, "$"); }
CurvedPolyhedron polyhedron_from_json(const json& j) { return read_polyhedron(j, "$"); }
CoonsCell coons_cell_from_json(const json& j) { return read_coons(j, "$"); }
PyramidCell pyramid_cell_from_json(const json& j) { return read_pyramid(j, "$"); }

Decomposition2D decomposition_2d_from_json(const json& j)
{
    return read_decomposition<Decomposition2D>(j, "$", read_coons);
}

Decomposition3D decomposition_3d_from_json(const json& j)
{
    return read_decomposition<Decomposition3D>(j, "$", read_pyramid);
}

json to_json(const GeometryDocument& doc)
{
    json j;
    j["dimension"] = doc.dimension;
    if (doc.polygon) j["polygon"] = to_json(*doc.polygon);
    if (doc.polyhedron) j["polyhedron"] = to_json(*doc.polyhedron);
    if (!doc.elements.empty()) {
        json e = json::array();
        for (const auto& el : doc.elements) {
            if (!el.solid) continue;
            e.push_back({{"element_id", el.element_id}, {"polyhedron", to_json(*el.solid)}});
        }
        j["elements"] = std::move(e);
    }
    return j;
}

GeometryDocument geometry_from_json(const json& j)
{
    if (!j.is_object()) fail("$", "expected an object");
    GeometryDocument doc;
    const int given = [&] {
        if (const json* d = optional_field(j, "dimension")) return integer(*d, "$/dimension");
        return j.contains("polygon") ? 2 : 3;
    }();
    if (given != 2 && given != 3) fail("$/dimension", "must be 2 or 3");
    doc.dimension = given;
    const int sources = static_cast<int>(j.contains("polygon")) + static_cast<int>(j.contains("polyhedron")) +
                        static_cast<int>(j.contains("elements"));
    if (sources != 1) fail("$", "expected exactly one of 'polygon', 'polyhedron', 'elements'");
    if (const json* p = optional_field(j, "polygon")) {
        if (given != 2) fail("$/polygon", "polygon in a 3D document");
        doc.polygon = read_polygon(*p, "$/polygon");
    } else {
        if (given != 3) fail("$", "polyhedron data in a 2D document");
        if (const json* p = optional_field(j, "polyhedron")) doc.polyhedron = read_polyhedron(*p, "$/polyhedron");
        else doc.elements = trimmed_elements_3d_from_json(j);
    }
    return doc;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

GeometryDocument load_geometry(const std::string& path) { return geometry_from_json(read_json_file(path)); }

std::vector<TrimmedElement> trimmed_elements_3d_from_json(const json& j)
{
    std::vector<TrimmedElement> out;
    if (const json* p = optional_field(j, "polyhedron")) {
        TrimmedElement e;
        e.solid = read_polyhedron(*p, "$/polyhedron");
        out.push_back(std::move(e));
    } else {
        std::size_t i = 0;
        for (const auto& el : array(field(j, "elements", "$"), "$/elements")) {
            const std::string path = "$/elements/" + std::to_string(i++);
            TrimmedElement e;
            e.element_id = integer(field(el, "element_id", path), path + "/element_id");
            e.solid = read_polyhedron(field(el, "polyhedron", path), path + "/polyhedron");
            out.push_back(std::move(e));
        }
        if (out.empty()) fail("$/elements", "no elements");
    }
    for (const auto& e : out) {
        const std::string label = "element " + std::to_string(e.element_id);
        std::size_t k = 0;
        for (const auto& f : e.solid->faces()) {
            try {
                f.require_valid();
            } catch (const OrientationError& err) {
                throw OrientationError(label + ", face " + std::to_string(k) + ": " + err.what());
            } catch (const GeometryError& err) {
                throw SchemaError(label + ", face " + std::to_string(k) + ": " + err.what());
            }
            ++k;
        }
        try {
            require_outward_closed(*e.solid);
        } catch (const OrientationError& err) {
            throw OrientationError(label + ": " + err.what());
        }
    }
    return out;
}

std::vector<TrimmedElement> load_trimmed_elements_3d(const std::string& path)
{
    return trimmed_elements_3d_from_json(read_json_file(path));
}

std::uint64_t fnv1a(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fingerprint(const json& config)
{
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
    return hex;
}

std::string fingerprint_line(const json& config)
{
    return "# config-fingerprint " + fingerprint(config) + " " + config.dump();
}

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

void write_table_csv(std::ostream& out, const QuadratureTable& t, const json& config)
{
    out << fingerprint_line(config) << '\n';
    out << (t.dim == 3 ? "element_id,cell_id,x,y,z,weight\n" : "element_id,cell_id,x,y,weight\n");
    for (const auto& e : t.entries) {
        out << e.element_id << ',' << e.cell_id;
        for (int k = 0; k < t.dim; ++k) out << ',' << format_double(e.x[static_cast<std::size_t>(k)]);
        out << ',' << format_double(e.weight) << '\n';
    }
}

json table_to_json(const QuadratureTable& t, const json& config)
{
    json pts = json::array();
    for (const auto& e : t.entries) {
        json x = json::array();
        for (int k = 0; k < t.dim; ++k) x.push_back(e.x[static_cast<std::size_t>(k)]);
        pts.push_back({{"element_id", e.element_id}, {"cell_id", e.cell_id}, {"x", std::move(x)}, {"weight", e.weight}});
    }
    return {{"dimension", t.dim},
            {"fingerprint", fingerprint(config)},
            {"config", config},
            {"points", std::move(pts)}};
}

void write_element_csv(std::ostream& out, const std::vector<ElementRow>& rows, const json& config)
{
    out << fingerprint_line(config) << '\n';
    out << "element_id,class,cells,n,err\n";
    for (const auto& r : rows)
        out << r.element_id << ',' << to_string(r.cls) << ',' << r.cells << ',' << r.n << ',' << format_double(r.err) << '\n';
}

} // namespace foldquad::io
