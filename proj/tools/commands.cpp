#include "commands.hpp"

#include <foldquad/decomp.hpp>
#include <foldquad/errors.hpp>
#include <foldquad/gauss.hpp>
#include <foldquad/immersed.hpp>
#include <foldquad/oracle.hpp>
#include <foldquad/presets.hpp>
#include <foldquad/verify.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace foldquad::cli {

using io::json;

json RunConfig::fingerprint_config() const
{
    json j;
    j["command"] = command;
    if (!preset.empty()) j["preset"] = preset;
    if (!geometry.empty()) j["geometry"] = geometry;
    if (command == "gauss") {
        j["n"] = n;
        j["p"] = p;
        j["q"] = q;
        j["dim"] = dim;
        return j;
    }
    j["grid"] = grid;
    if (!grid_counts.empty()) {
        j["grid_origin"] = grid_origin;
        j["grid_spacing"] = grid_spacing;
        j["grid_counts"] = grid_counts;
    }
    j["p"] = p;
    j["n"] = n;
    j["offset"] = offset;
    j["n_max"] = n_max;
    j["n_list"] = n_list;
    j["grid_min"] = grid_min;
    j["grid_max"] = grid_max;
    j["integrand"] = integrand;
    j["seed"] = seed;
    j["seed_strategy"] = seed_strategy;
    j["seed_sweep"] = seed_sweep;
    j["fit_degree"] = fit_degree;
    return j;
}

namespace {

struct Input {
    io::GeometryDocument doc;
    std::string preset;
};

Input load_input(const RunConfig& cfg)
{
    if (cfg.preset.empty() == cfg.geometry.empty())
        throw UsageError("exactly one of --preset and --geometry is required");
    Input in;
    in.preset = cfg.preset;
    if (!cfg.geometry.empty()) {
        in.doc = io::load_geometry(cfg.geometry);
        return in;
    }
    if (is_preset_2d(cfg.preset)) {
        in.doc.dimension = 2;
        in.doc.polygon = polygon_preset(cfg.preset);
    } else if (is_preset_3d(cfg.preset)) {
        in.doc.dimension = 3;
        in.doc.polyhedron = polyhedron_preset(cfg.preset);
    } else {
        std::string names;
        for (const auto& n : preset_names_2d()) names += " " + n;
        for (const auto& n : preset_names_3d()) names += " " + n;
        throw UsageError("unknown preset '" + cfg.preset + "'; available:" + names);
    }
    return in;
}

std::vector<double> parse_seed(const std::string& text, int dim)
{
    std::vector<double> v;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad --seed '" + text + "'");
        }
    }
    if (static_cast<int>(v.size()) != dim)
        throw UsageError("--seed needs " + std::to_string(dim) + " coordinates, got '" + text + "'");
    return v;
}

SeedStrategy strategy_2d(const RunConfig& cfg, const char* fallback)
{
    SeedStrategy s;
    try {
        s = SeedStrategy::parse(cfg.seed_strategy.empty() ? (cfg.seed.empty() ? fallback : "point") : cfg.seed_strategy);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (s.kind == SeedStrategy::Kind::Point) {
        if (cfg.seed.empty()) throw UsageError("--seed-strategy point needs --seed x,y");
        const auto v = parse_seed(cfg.seed, 2);
        s.point = {v[0], v[1]};
    }
    return s;
}

Vec3 seed_3d(const RunConfig& cfg, const CurvedPolyhedron& brep, const DecomposeOptions& opt)
{
    if (!cfg.seed.empty() && (cfg.seed_strategy.empty() || cfg.seed_strategy == "point")) {
        const auto v = parse_seed(cfg.seed, 3);
        return {v[0], v[1], v[2]};
    }
    SeedStrategy s;
    try {
        s = SeedStrategy::parse(cfg.seed_strategy.empty() ? "min-cells" : cfg.seed_strategy);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    switch (s.kind) {
    case SeedStrategy::Kind::MinCells: return choose_seed_min_cells(brep, opt);
    case SeedStrategy::Kind::Vertex: {
        const auto v = brep.vertices();
        if (static_cast<std::size_t>(s.vertex) >= v.size())
            throw UsageError("vertex index " + std::to_string(s.vertex) + " out of range (" + std::to_string(v.size()) +
                             " vertices)");
        return v[static_cast<std::size_t>(s.vertex)];
    }
    case SeedStrategy::Kind::Point: throw UsageError("--seed-strategy point needs --seed x,y,z");
    case SeedStrategy::Kind::QuadDominant: throw UsageError("quad-dominant splitting is 2D only");
    }
    return {};
}

Decomposition2D decompose_2d(const RunConfig& cfg, const CurvedPolygon& poly)
{
    const SeedStrategy s = strategy_2d(cfg, "quad-dominant");
    switch (s.kind) {
    case SeedStrategy::Kind::QuadDominant: return quad_dominant_split(poly);
    case SeedStrategy::Kind::Point: return triangulate_from_seed(poly, s.point);
    case SeedStrategy::Kind::MinCells: return triangulate_from_seed(poly, choose_seed_min_cells(poly));
    case SeedStrategy::Kind::Vertex: {
        const auto v = poly.vertices();
        if (static_cast<std::size_t>(s.vertex) >= v.size())
            throw UsageError("vertex index " + std::to_string(s.vertex) + " out of range (" + std::to_string(v.size()) +
                             " vertices)");
        return triangulate_from_seed(poly, v[static_cast<std::size_t>(s.vertex)]);
    }
    }
    return {};
}

std::vector<std::pair<long, CurvedPolyhedron>> solids(const io::GeometryDocument& doc)
{
    std::vector<std::pair<long, CurvedPolyhedron>> out;
    if (doc.polyhedron) out.emplace_back(0, *doc.polyhedron);
    for (const auto& e : doc.elements) out.emplace_back(e.element_id, *e.solid);
    return out;
}

template <class D>
std::string summary(const D& d)
{
    std::ostringstream s;
    s << "cells=" << d.size() << " jplus=" << d.count(SignKind::Jplus) << " jminus=" << d.count(SignKind::Jminus)
      << " folded=" << d.count(SignKind::Folded) << " unknown=" << d.count(SignKind::Unknown);
    return s.str();
}

// Writes to --out when given, otherwise to the command's stream.
template <class Fn>
void emit(const RunConfig& cfg, std::ostream& fallback, Fn&& write)
{
    if (cfg.out.empty() || cfg.out == "-") {
        write(fallback);
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw UsageError("cannot write '" + cfg.out + "'");
    write(f);
}

CartesianGrid2D make_grid(const RunConfig& cfg, const CurvedPolygon& poly)
{
    CartesianGrid2D g;
    if (!cfg.grid_counts.empty()) {
        if (cfg.grid_counts.size() != 2 || cfg.grid_origin.size() != 2 || cfg.grid_spacing.size() != 2)
            throw UsageError("--grid-origin, --grid-spacing and --grid-counts need two values each");
        g.origin = {cfg.grid_origin[0], cfg.grid_origin[1]};
        g.spacing = {cfg.grid_spacing[0], cfg.grid_spacing[1]};
        g.counts = {cfg.grid_counts[0], cfg.grid_counts[1]};
    } else {
        if (cfg.grid < 1) throw UsageError("--grid must be at least 1");
        g = CartesianGrid2D::covering(poly.bounding_box(), cfg.grid);
    }
    try {
        g.validate();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    return g;
}

struct Immersed {
    CartesianGrid2D grid;
    std::vector<ElementClass> classes;
    std::vector<TrimmedElement> elements;
};

Immersed immerse(const CartesianGrid2D& grid, const CurvedPolygon& poly, const RunConfig& cfg)
{
    poly.require_valid();
    Immersed m{grid, classify_elements(grid, poly, cfg.jobs), {}};
    TrimOptions opt;
    opt.fit_degree = cfg.fit_degree;
    m.elements = trimmed_elements(grid, poly.bezier_segmented(), m.classes, opt, cfg.jobs);
    return m;
}

int points(const RunConfig& cfg)
{
    int n = cfg.n;
    if (cfg.offset >= 0) {
        if (cfg.n > 0) throw UsageError("give either -n or --offset, not both");
        n = cfg.p.front() + cfg.offset;
    }
    if (n < 1 || n > kMaxGaussPoints)
        throw UsageError("points per direction must be in 1.." + std::to_string(kMaxGaussPoints) + " (use -n or -p with --offset)");
    return n;
}

std::string format_rate(double r) { return std::isfinite(r) ? io::format_double(r) : "nan"; }

// ---------------------------------------------------------------- commands

int cmd_decompose(const RunConfig& cfg, const Input& in, std::ostream& out)
{
    const json conf = cfg.fingerprint_config();
    json doc{{"config", conf}, {"fingerprint", io::fingerprint(conf)}};
    if (in.doc.polygon) {
        const auto d = decompose_2d(cfg, *in.doc.polygon);
        out << summary(d) << " kind=" << to_string(d.kind()) << '\n';
        doc["decomposition"] = io::to_json(d);
    } else {
        DecomposeOptions opt;
        opt.fit_degree = cfg.fit_degree;
        json elems = json::array();
        for (const auto& [id, brep] : solids(in.doc)) {
            const auto d = decompose_polyhedron(brep, seed_3d(cfg, brep, opt), opt);
            if (in.doc.elements.empty()) {
                out << summary(d) << " kind=" << to_string(d.kind()) << '\n';
                doc["decomposition"] = io::to_json(d);
            } else {
                out << "element=" << id << ' ' << summary(d) << " kind=" << to_string(d.kind()) << '\n';
                elems.push_back({{"element_id", id}, {"decomposition", io::to_json(d)}});
            }
        }
        if (!in.doc.elements.empty()) doc["elements"] = std::move(elems);
    }
    if (!cfg.out.empty()) emit(cfg, out, [&](std::ostream& o) { o << doc.dump(1) << '\n'; });
    return 0;
}

int cmd_bernstein_table(const RunConfig& cfg, const Input& in, std::ostream& out)
{
    if (cfg.n_max < 1 || cfg.n_max > kMaxGaussPoints) throw UsageError("--n-max must be in 1..64");
    for (int p : cfg.p)
        if (p < 1) throw UsageError("-p values must be >= 1");
    const bool sweep = cfg.seed_sweep >= 2;
    if (cfg.seed_sweep == 1) throw UsageError("--seed-sweep needs k >= 2");
    const json conf = cfg.fingerprint_config();
    std::ostringstream csv;
    csv << io::fingerprint_line(conf) << '\n' << (sweep ? "p,n,err,err_sweep\n" : "p,n,err\n");
    std::vector<io::ElementRow> rows;

    if (in.doc.polygon) {
        const auto m = immerse(make_grid(cfg, *in.doc.polygon), *in.doc.polygon, cfg);
        const SeedStrategy s = strategy_2d(cfg, "min-cells");
        for (int p : cfg.p)
            for (int n = 1; n <= cfg.n_max; ++n) {
                const auto e = bernstein_integral_errors(m.grid, m.elements, p, n, s, 0, cfg.jobs);
                csv << p << ',' << n << ',' << io::format_double(e.err);
                // The worst case covers the lattice and the seed of the chosen strategy.
                if (sweep)
                    csv << ',' << io::format_double(std::max(e.err, bernstein_integral_errors(m.grid, m.elements, p, n, s,
                                                                                             cfg.seed_sweep, cfg.jobs).err));
                csv << '\n';
                if (p == cfg.p.back())
                    for (const auto& el : e.elements) rows.push_back({el.element_id, ElementClass::Trimmed, el.cells, n, el.err});
            }
    } else {
        DecomposeOptions opt;
        opt.fit_degree = cfg.fit_degree;
        for (const auto& [id, brep] : solids(in.doc)) {
            // The solid is embedded in a single element: its bounding box.
            const Box3 box = brep.bounding_box();
            const auto d = decompose_polyhedron(brep, seed_3d(cfg, brep, opt), opt);
            std::vector<Decomposition3D> lattice;
            if (sweep)
                for (const Vec3& s : seed_lattice(box, cfg.seed_sweep)) lattice.push_back(decompose_polyhedron(brep, s, opt));
            for (int p : cfg.p)
                for (int n = 1; n <= cfg.n_max; ++n) {
                    const double e = bernstein_integral_error_3d(box, d, p, n);
                    csv << p << ',' << n << ',' << io::format_double(e);
                    if (sweep) {
                        double w = e;
                        for (const auto& ld : lattice) w = std::max(w, bernstein_integral_error_3d(box, ld, p, n));
                        csv << ',' << io::format_double(w);
                    }
                    csv << '\n';
                    if (p == cfg.p.back()) rows.push_back({id, ElementClass::Trimmed, d.size(), n, e});
                }
        }
    }
    emit(cfg, out, [&](std::ostream& o) { o << csv.str(); });
    if (!cfg.elements_out.empty()) {
        std::ofstream f(cfg.elements_out);
        if (!f) throw UsageError("cannot write '" + cfg.elements_out + "'");
        io::write_element_csv(f, rows, conf);
    }
    return 0;
}

Antiderivative2 integrand_2d(const std::string& name)
{
    if (name == "smooth") return smooth_test_function_2d();
    if (name == "constant")
        return {[](const Vec2&) { return 1.0; }, [](const Vec2& x) { return x.x; }, 0};
    if (name.rfind("poly:", 0) == 0) {
        int p = -1;
        try {
            p = std::stoi(name.substr(5));
        } catch (const std::exception&) {
        }
        if (p < 0 || p > 16) throw UsageError("bad integrand '" + name + "' (poly:<p>, 0 <= p <= 16)");
        return {[p](const Vec2& x) { return std::pow(x.x, p) * std::pow(x.y, p); },
                [p](const Vec2& x) { return std::pow(x.x, p + 1) / (p + 1) * std::pow(x.y, p); }, 0};
    }
    throw UsageError("unknown integrand '" + name + "' (smooth, constant, poly:<p>)");
}

// Least-squares slope of log(error) against log(h) over the last three points with error >= 1e-14.
double fitted_rate(const std::vector<double>& h, const std::vector<double>& e)
{
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (e[i] >= 1e-14) pts.emplace_back(std::log(h[i]), std::log(e[i]));
    if (pts.size() > 3) pts.erase(pts.begin(), pts.end() - 3);
    if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0, my = 0;
    for (auto [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0, sxx = 0;
    for (auto [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxy / sxx;
}

int cmd_convergence(const RunConfig& cfg, const Input& in, std::ostream& out, std::ostream& err)
{
    if (!in.doc.polygon)
        throw UsageError("convergence studies need a 2D geometry; 3D grid trimming is not implemented "
                         "(trimmed 3D elements are read from files)");
    if (cfg.grid_min < 1 || cfg.grid_max < cfg.grid_min) throw UsageError("need 1 <= --grid-min <= --grid-max");
    for (int n : cfg.n_list)
        if (n < 1 || n > kMaxGaussPoints) throw UsageError("--n-list values must be in 1..64");
    const auto& poly = *in.doc.polygon;
    poly.require_valid();
    const auto F = integrand_2d(cfg.integrand);
    const double ref = boundary_integral(poly, F, kMaxGaussPoints);
    const SeedStrategy s = strategy_2d(cfg, "min-cells");

    std::vector<double> hs;
    std::vector<std::vector<double>> errs(cfg.n_list.size());
    for (int m = cfg.grid_min; m <= cfg.grid_max; m *= 2) {
        const auto grid = CartesianGrid2D::covering(poly.bounding_box(), m);
        const auto im = immerse(grid, poly, cfg);
        hs.push_back(std::max(grid.spacing.x, grid.spacing.y));
        for (std::size_t k = 0; k < cfg.n_list.size(); ++k) {
            const double v = integrate_immersed(im.grid, im.classes, im.elements, F.f, cfg.n_list[k], s, cfg.jobs);
            errs[k].push_back(std::abs(v - ref) / std::abs(ref));
        }
    }
    const json conf = cfg.fingerprint_config();
    std::ostringstream csv;
    csv << io::fingerprint_line(conf) << '\n' << "h,n,error,rate\n";
    for (std::size_t k = 0; k < cfg.n_list.size(); ++k) {
        const bool constant = cfg.integrand == "constant";
        const double rate = constant ? std::numeric_limits<double>::quiet_NaN() : fitted_rate(hs, errs[k]);
        for (std::size_t i = 0; i < hs.size(); ++i)
            csv << io::format_double(hs[i]) << ',' << cfg.n_list[k] << ',' << io::format_double(errs[k][i]) << ','
                << format_rate(rate) << '\n';
        err << "n=" << cfg.n_list[k] << " rate=" << format_rate(rate) << '\n';
    }
    emit(cfg, out, [&](std::ostream& o) { o << csv.str(); });
    return 0;
}

int cmd_export(const RunConfig& cfg, const Input& in, std::ostream& out, std::ostream& err)
{
    const int n = points(cfg);
    QuadratureTable t;
    if (in.doc.polygon) {
        const auto m = immerse(make_grid(cfg, *in.doc.polygon), *in.doc.polygon, cfg);
        t = immersed_table(m.grid, m.classes, m.elements, n, strategy_2d(cfg, "min-cells"));
    } else {
        DecomposeOptions opt;
        opt.fit_degree = cfg.fit_degree;
        std::vector<std::pair<long, Decomposition3D>> parts;
        for (const auto& [id, brep] : solids(in.doc)) parts.emplace_back(id, decompose_polyhedron(brep, seed_3d(cfg, brep, opt), opt));
        t = export_table(parts, n);
    }
    std::string format = cfg.format;
    if (format.empty())
        format = cfg.out.size() >= 5 && cfg.out.substr(cfg.out.size() - 5) == ".json" ? "json" : "csv";
    if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
    const json conf = cfg.fingerprint_config();
    emit(cfg, out, [&](std::ostream& o) {
        if (format == "csv") io::write_table_csv(o, t, conf);
        else o << io::table_to_json(t, conf).dump() << '\n';
    });
    std::size_t negative = 0;
    for (const auto& e : t.entries) negative += e.weight < 0.0;
    err << "points=" << t.entries.size() << " negative=" << negative << " weight_sum=" << io::format_double(t.weight_sum())
        << '\n';
    return 0;
}

json report_json(const VerifyReport& r)
{
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name},
                          {"ran", c.ran},
                          {"passed", c.ran && c.passed},
                          {"value", std::isfinite(c.value) ? json(c.value) : json(nullptr)},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail}});
    return {{"dimension", r.dimension}, {"passed", r.passed()}, {"checks", std::move(checks)}};
}

int cmd_verify(const RunConfig& cfg, const Input& in, std::ostream& out)
{
    VerifyOptions opt;
    opt.samples = cfg.samples;
    opt.max_degree = cfg.max_degree;
    opt.jobs = cfg.jobs;
    json report;
    report["config"] = cfg.fingerprint_config();
    bool ok = true;
    if (in.doc.polygon) {
        std::optional<DenseRegion2D> region;
        if (!in.preset.empty()) region = preset_dense_region_2d(in.preset);
        const auto r = verify_polygon(*in.doc.polygon, opt, region);
        ok = r.passed();
        report["report"] = report_json(r);
    } else {
        std::optional<DenseRegion3D> region;
        if (!in.preset.empty()) region = preset_dense_region_3d(in.preset);
        json elems = json::array();
        for (const auto& [id, brep] : solids(in.doc)) {
            const auto r = verify_polyhedron(brep, opt, region);
            ok = ok && r.passed();
            json e = report_json(r);
            e["element_id"] = id;
            elems.push_back(std::move(e));
        }
        if (elems.size() == 1) report["report"] = elems[0];
        else report["elements"] = std::move(elems);
    }
    report["passed"] = ok;
    emit(cfg, out, [&](std::ostream& o) { o << report.dump(2) << '\n'; });
    if (!ok) throw VerificationFailure("verification failed");
    return 0;
}

int cmd_gauss(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.q > 0) {
        if (cfg.p.size() != 1 || cfg.p.front() < 0) throw UsageError("min points: give a single -p >= 0");
        if (cfg.dim != 2 && cfg.dim != 3) throw UsageError("--dim must be 2 or 3");
        out << min_points_exact(cfg.p.front(), cfg.q, cfg.dim) << '\n';
        return 0;
    }
    if (cfg.n < 1 || cfg.n > kMaxGaussPoints) throw UsageError("-n must be in 1..64");
    const auto& r = gauss_legendre(cfg.n);
    emit(cfg, out, [&](std::ostream& o) {
        o << io::fingerprint_line(cfg.fingerprint_config()) << '\n' << "i,node,weight\n";
        for (int i = 0; i < r.n; ++i)
            o << i << ',' << io::format_double(r.nodes[static_cast<std::size_t>(i)]) << ','
              << io::format_double(r.weights[static_cast<std::size_t>(i)]) << '\n';
    });
    return 0;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.command == "gauss") return cmd_gauss(cfg, out);
    const Input in = load_input(cfg);
    if (!in.doc.polygon && !in.doc.polyhedron && in.doc.elements.empty()) throw UsageError("empty geometry");
    if (cfg.command == "decompose") return cmd_decompose(cfg, in, out);
    if (cfg.command == "bernstein-table") return cmd_bernstein_table(cfg, in, out);
    if (cfg.command == "convergence") return cmd_convergence(cfg, in, out, err);
    if (cfg.command == "export-quad") return cmd_export(cfg, in, out, err);
    if (cfg.command == "verify") return cmd_verify(cfg, in, out);
    throw UsageError("unknown command '" + cfg.command + "'");
}

} // namespace foldquad::cli
