#pragma once

#include <foldquad/io.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace foldquad::cli {

/// Bad flags or inconsistent settings; exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The verification suite found a failing check; exit code 1.
class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;

    std::string geometry;
    std::string preset;

    // Grid: n elements per direction over the geometry's bounding box, or explicit values.
    int grid = 8;
    std::vector<double> grid_origin;
    std::vector<double> grid_spacing;
    std::vector<int> grid_counts;

    std::vector<int> p{1};
    int q = 0;
    int dim = 2;
    int n = 0;
    int offset = -1;
    int n_max = 12;
    std::vector<int> n_list{1, 2, 3};
    int grid_min = 2;
    int grid_max = 64;
    std::string integrand = "smooth";

    std::string seed;
    std::string seed_strategy;
    int seed_sweep = 0;
    int fit_degree = 0;

    int samples = 500;
    int max_degree = 4;

    std::string out;
    std::string elements_out;
    std::string format;
    int jobs = 0;

    /// Settings that determine the numbers in the output (paths and worker count excluded).
    io::json fingerprint_config() const;
};

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace foldquad::cli
