#include "commands.hpp"

#include <foldquad/errors.hpp>
#include <foldquad/parallel.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

namespace {

using nlohmann::json;
using foldquad::cli::RunConfig;

// JSON config files: global keys at the top level, subcommand keys either inside an object named
// after the subcommand or flat at the top level (then they apply to the subcommand being run).
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(std::string sub) : sub_(std::move(sub)) {}

    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override
    {
        json j;
        try {
            j = json::parse(input);
        } catch (const json::exception& e) {
            throw CLI::ConversionError(std::string("config file: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
        std::vector<CLI::ConfigItem> items;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_object()) {
                for (auto s = it->begin(); s != it->end(); ++s) items.push_back(item({it.key()}, s.key(), *s));
            } else if (it.key() == "jobs" || sub_.empty()) {
                items.push_back(item({}, it.key(), *it));
            } else {
                items.push_back(item({sub_}, it.key(), *it));
            }
        }
        return items;
    }

private:
    static std::string scalar(const json& v)
    {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number()) return v.dump();
        throw CLI::ConversionError("config values must be scalars or arrays of scalars");
    }

    static CLI::ConfigItem item(std::vector<std::string> parents, const std::string& key, const json& v)
    {
        CLI::ConfigItem c;
        c.parents = std::move(parents);
        // Keys may use '_' or '-'.
        c.name = key;
        for (auto& ch : c.name)
            if (ch == '_') ch = '-';
        if (v.is_array())
            for (const auto& e : v) c.inputs.push_back(scalar(e));
        else
            c.inputs.push_back(scalar(v));
        return c;
    }

    std::string sub_;
};

void geometry_options(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--preset", cfg.preset, "Built-in geometry: fig6a, fig7a, square, fig5, fig8a, cube");
    sub->add_option("--geometry", cfg.geometry, "Geometry JSON file")->check(CLI::ExistingFile);
}

void seed_options(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--seed", cfg.seed, "Seed point x,y[,z]");
    sub->add_option("--seed-strategy", cfg.seed_strategy, "min-cells | vertex:<i> | point | quad-dominant");
    sub->add_option("--fit-degree", cfg.fit_degree, "Refit curved pieces with degree-q Beziers (0 keeps them exact)")
        ->check(CLI::NonNegativeNumber);
}

void grid_options(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--grid", cfg.grid, "Elements per direction over the bounding box")->check(CLI::PositiveNumber);
    sub->add_option("--grid-origin", cfg.grid_origin, "Explicit grid origin x,y")->delimiter(',');
    sub->add_option("--grid-spacing", cfg.grid_spacing, "Explicit element size hx,hy")->delimiter(',');
    sub->add_option("--grid-counts", cfg.grid_counts, "Explicit element counts nx,ny")->delimiter(',');
}

void output_option(CLI::App* sub, RunConfig& cfg, const char* what)
{
    sub->add_option("-o,--out", cfg.out, what);
}

std::string find_subcommand(int argc, char** argv)
{
    static const char* names[] = {"decompose", "bernstein-table", "convergence", "export-quad", "verify", "gauss"};
    for (int i = 1; i < argc; ++i)
        for (const char* n : names)
            if (std::string(argv[i]) == n) return n;
    return {};
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"Quadrature on curved domains through signed cell decompositions"};
    app.require_subcommand(1);
    app.add_option("-j,--jobs", cfg.jobs, "Worker threads (default: available parallelism)")->check(CLI::NonNegativeNumber);
    app.set_config("--config", "", "JSON config file; command-line flags win");
    app.config_formatter(std::make_shared<JsonConfig>(find_subcommand(argc, argv)));

    auto* dec = app.add_subcommand("decompose", "Decompose a region into cells and print the sign summary");
    geometry_options(dec, cfg);
    seed_options(dec, cfg);
    output_option(dec, cfg, "Write the cells as geometry JSON");

    auto* bt = app.add_subcommand("bernstein-table", "Bernstein integration errors against the 64-point reference");
    geometry_options(bt, cfg);
    seed_options(bt, cfg);
    grid_options(bt, cfg);
    bt->add_option("-p", cfg.p, "Bernstein degrees, e.g. 1,2,3,4")->delimiter(',');
    bt->add_option("--n-max", cfg.n_max, "Largest number of points per direction");
    bt->add_option("--seed-sweep", cfg.seed_sweep, "Also report the worst case over a k^d seed lattice");
    bt->add_option("--elements-out", cfg.elements_out, "Per-element CSV for the last degree");
    output_option(bt, cfg, "CSV output (default: stdout)");

    auto* cv = app.add_subcommand("convergence", "Integration error under grid refinement");
    geometry_options(cv, cfg);
    seed_options(cv, cfg);
    cv->add_option("--n-list", cfg.n_list, "Points per direction to study, e.g. 1,2,3")->delimiter(',');
    cv->add_option("--grid-min", cfg.grid_min, "Coarsest grid (elements per direction)");
    cv->add_option("--grid-max", cfg.grid_max, "Finest grid; sizes double from --grid-min");
    cv->add_option("--integrand", cfg.integrand, "smooth | constant | poly:<p>");
    output_option(cv, cfg, "CSV output (default: stdout)");

    auto* ex = app.add_subcommand("export-quad", "Export points and signed weights of the immersed quadrature");
    geometry_options(ex, cfg);
    seed_options(ex, cfg);
    grid_options(ex, cfg);
    ex->add_option("-n", cfg.n, "Points per direction");
    ex->add_option("-p", cfg.p, "Degree used with --offset")->delimiter(',');
    ex->add_option("-r,--offset", cfg.offset, "Use n = p + r points");
    ex->add_option("--format", cfg.format, "csv | json (default from the file extension)");
    output_option(ex, cfg, "Output file (default: stdout)");

    auto* vf = app.add_subcommand("verify", "Run the oracle checks and print a JSON report");
    geometry_options(vf, cfg);
    vf->add_option("--samples", cfg.samples, "Signed coverage samples (2D)")->check(CLI::PositiveNumber);
    vf->add_option("--max-degree", cfg.max_degree, "Largest integrand degree")->check(CLI::NonNegativeNumber);
    output_option(vf, cfg, "Report file (default: stdout)");

    auto* ga = app.add_subcommand("gauss", "Print a Gauss-Legendre rule on [0,1], or the minimum exact point count with -q");
    ga->add_option("-n", cfg.n, "Number of points");
    ga->add_option("-p", cfg.p, "Polynomial degree")->delimiter(',');
    ga->add_option("-q", cfg.q, "Cell degree; prints the minimum points per direction");
    ga->add_option("--dim", cfg.dim, "Dimension for -q (2 or 3)");
    output_option(ga, cfg, "CSV output (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.jobs > 0) foldquad::set_default_jobs(cfg.jobs);

    try {
        return foldquad::cli::run(cfg, std::cout, std::cerr);
    } catch (const foldquad::cli::VerificationFailure& e) {
        std::cerr << "foldquad: " << e.what() << '\n';
        return 1;
    } catch (const foldquad::cli::UsageError& e) {
        std::cerr << "foldquad: usage: " << e.what() << '\n';
        return 2;
    } catch (const foldquad::SchemaError& e) {
        std::cerr << "foldquad: schema: " << e.what() << '\n';
        return 2;
    } catch (const foldquad::GeometryError& e) {
        std::cerr << "foldquad: geometry: " << e.what() << '\n';
        return 2;
    } catch (const foldquad::NumericalError& e) {
        std::cerr << "foldquad: numerical: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "foldquad: usage: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "foldquad: " << e.what() << '\n';
        return 3;
    }
}
