#include <foldquad/decomp.hpp>
#include <foldquad/errors.hpp>
#include <foldquad/gauss.hpp>
#include <foldquad/immersed.hpp>
#include <foldquad/io.hpp>
#include <foldquad/oracle.hpp>
#include <foldquad/parallel.hpp>
#include <foldquad/presets.hpp>
#include <foldquad/verify.hpp>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>

namespace py = pybind11;
using namespace foldquad;
using io::json;

namespace {

// A preset name, JSON text, or a path to a geometry file.
io::GeometryDocument load(const std::string& source)
{
    io::GeometryDocument doc;
    if (is_preset_2d(source)) {
        doc.dimension = 2;
        doc.polygon = polygon_preset(source);
    } else if (is_preset_3d(source)) {
        doc.dimension = 3;
        doc.polyhedron = polyhedron_preset(source);
    } else if (!source.empty() && source.front() == '{') {
        json j;
        try {
            j = json::parse(source);
        } catch (const json::exception& e) {
            throw SchemaError(std::string("$: ") + e.what());
        }
        doc = io::geometry_from_json(j);
    } else if (std::filesystem::exists(source)) {
        doc = io::load_geometry(source);
    } else {
        throw std::invalid_argument("'" + source + "' is neither a preset, JSON text nor an existing file");
    }
    return doc;
}

std::vector<std::pair<long, CurvedPolyhedron>> solids(const io::GeometryDocument& doc)
{
    std::vector<std::pair<long, CurvedPolyhedron>> out;
    if (doc.polyhedron) out.emplace_back(0, *doc.polyhedron);
    for (const auto& e : doc.elements) out.emplace_back(e.element_id, *e.solid);
    return out;
}

SeedStrategy strategy(const std::string& name, const std::optional<std::vector<double>>& seed)
{
    if (seed) {
        if (seed->size() != 2) throw std::invalid_argument("2D seeds need two coordinates");
        SeedStrategy s;
        s.kind = SeedStrategy::Kind::Point;
        s.point = {(*seed)[0], (*seed)[1]};
        return s;
    }
    return SeedStrategy::parse(name);
}

Vec3 seed_3d(const CurvedPolyhedron& b, const std::string& name, const std::optional<std::vector<double>>& seed)
{
    if (seed) {
        if (seed->size() != 3) throw std::invalid_argument("3D seeds need three coordinates");
        return {(*seed)[0], (*seed)[1], (*seed)[2]};
    }
    const auto s = SeedStrategy::parse(name);
    if (s.kind == SeedStrategy::Kind::Vertex) return b.vertices().at(static_cast<std::size_t>(s.vertex));
    if (s.kind != SeedStrategy::Kind::MinCells) throw std::invalid_argument("3D seeds: min-cells, vertex:<i> or an explicit point");
    return choose_seed_min_cells(b);
}

std::string decompose(const std::string& source, const std::string& name, const std::optional<std::vector<double>>& seed)
{
    const auto doc = load(source);
    if (doc.polygon) {
        const auto& poly = *doc.polygon;
        poly.require_valid();
        const auto s = strategy(name, seed);
        Decomposition2D d;
        switch (s.kind) {
        case SeedStrategy::Kind::QuadDominant: d = quad_dominant_split(poly); break;
        case SeedStrategy::Kind::Point: d = triangulate_from_seed(poly, s.point); break;
        case SeedStrategy::Kind::MinCells: d = triangulate_from_seed(poly, choose_seed_min_cells(poly)); break;
        case SeedStrategy::Kind::Vertex: d = triangulate_from_seed(poly, poly.vertices().at(static_cast<std::size_t>(s.vertex))); break;
        }
        return io::to_json(d).dump();
    }
    json out = json::array();
    for (const auto& [id, b] : solids(doc)) {
        json e = io::to_json(decompose_polyhedron(b, seed_3d(b, name, seed)));
        e["element_id"] = id;
        out.push_back(e);
    }
    return doc.polyhedron ? out[0].dump() : out.dump();
}

py::dict quadrature(const std::string& source, int n, int grid, const std::string& name,
                    const std::optional<std::vector<double>>& seed)
{
    const auto doc = load(source);
    QuadratureTable t;
    if (doc.polygon) {
        const auto& poly = *doc.polygon;
        poly.require_valid();
        const auto g = CartesianGrid2D::covering(poly.bounding_box(), grid);
        const auto classes = classify_elements(g, poly);
        const auto elements = trimmed_elements(g, poly.bezier_segmented(), classes);
        t = immersed_table(g, classes, elements, n, strategy(name, seed));
    } else {
        std::vector<std::pair<long, Decomposition3D>> parts;
        for (const auto& [id, b] : solids(doc)) parts.emplace_back(id, decompose_polyhedron(b, seed_3d(b, name, seed)));
        t = export_table(parts, n);
    }
    const auto m = static_cast<py::ssize_t>(t.entries.size());
    py::array_t<long> ids(m), cells(m);
    py::array_t<double> pts({m, static_cast<py::ssize_t>(t.dim)}), w(m);
    auto ri = ids.mutable_unchecked<1>();
    auto rc = cells.mutable_unchecked<1>();
    auto rp = pts.mutable_unchecked<2>();
    auto rw = w.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < m; ++i) {
        const auto& e = t.entries[static_cast<std::size_t>(i)];
        ri(i) = e.element_id;
        rc(i) = e.cell_id;
        for (int k = 0; k < t.dim; ++k) rp(i, k) = e.x[static_cast<std::size_t>(k)];
        rw(i) = e.weight;
    }
    py::dict d;
    d["dimension"] = t.dim;
    d["element_id"] = ids;
    d["cell_id"] = cells;
    d["points"] = pts;
    d["weights"] = w;
    return d;
}

json report_json(const VerifyReport& r)
{
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"ran", c.ran}, {"passed", c.passed}, {"value", c.value},
                          {"tolerance", c.tolerance}, {"detail", c.detail}});
    return {{"dimension", r.dimension}, {"checks", checks}, {"passed", r.passed()}};
}

std::string verify(const std::string& source, int samples, int max_degree)
{
    VerifyOptions o;
    o.samples = samples;
    o.max_degree = max_degree;
    const auto doc = load(source);
    if (doc.polygon) {
        std::optional<DenseRegion2D> dense;
        if (is_preset_2d(source)) dense = preset_dense_region_2d(source);
        return report_json(verify_polygon(*doc.polygon, o, dense)).dump();
    }
    json out = json::array();
    for (const auto& [id, b] : solids(doc)) {
        std::optional<DenseRegion3D> dense;
        if (is_preset_3d(source)) dense = preset_dense_region_3d(source);
        json r = report_json(verify_polyhedron(b, o, dense));
        r["element_id"] = id;
        out.push_back(r);
    }
    return doc.polyhedron ? out[0].dump() : out.dump();
}

double measure(const std::string& source)
{
    const auto doc = load(source);
    if (doc.polygon) return boundary_measure(*doc.polygon);
    double v = 0.0;
    for (const auto& [id, b] : solids(doc)) v += boundary_measure(b);
    return v;
}

} // namespace

PYBIND11_MODULE(_foldquad, m)
{
    m.doc() = "Quadrature on curved domains through signed cell decompositions.";

    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("set_jobs", &set_default_jobs, py::arg("jobs"));
    m.def("presets", [] {
        auto v = preset_names_2d();
        for (const auto& s : preset_names_3d()) v.push_back(s);
        return v;
    });
    m.def(
        "gauss_legendre",
        [](int n) {
            const auto& g = gauss_legendre(n);
            return py::make_tuple(py::array_t<double>(n, g.nodes.data()), py::array_t<double>(n, g.weights.data()));
        },
        py::arg("n"), "Nodes and weights of the n-point rule on [0, 1].");
    m.def("min_points_exact", &min_points_exact, py::arg("p"), py::arg("q"), py::arg("d"));
    m.def("decompose", &decompose, py::arg("source"), py::arg("strategy") = "min-cells", py::arg("seed") = py::none(),
          "Cell decomposition as JSON text.");
    m.def("quadrature", &quadrature, py::arg("source"), py::arg("n"), py::arg("grid") = 8,
          py::arg("strategy") = "min-cells", py::arg("seed") = py::none());
    m.def("verify", &verify, py::arg("source"), py::arg("samples") = 500, py::arg("max_degree") = 4,
          py::call_guard<py::gil_scoped_release>());
    m.def("measure", &measure, py::arg("source"), "Area or volume from the boundary integral.");
}
