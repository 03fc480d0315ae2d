#pragma once

#include "foldquad/geometry.hpp"
#include "foldquad/oracle.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace foldquad {

struct CheckResult {
    std::string name;
    bool ran = false;
    bool passed = false;
    /// Measured quantity compared against the tolerance (relative error, violation count).
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    int dimension = 2;
    std::vector<CheckResult> checks;

    bool passed() const;
};

struct VerifyOptions {
    /// Integrand degrees 0..max_degree in 2D, 0..min(max_degree, 2) in 3D.
    int max_degree = 4;
    /// Filtered signed-coverage samples.
    int samples = 500;
    int samples_3d = 200;
    int dense_m = 16;
    int dense_depth = 12;
    /// 3D dense oracle; the generic (winding number) region gets m/2 boxes and a 10x looser tolerance.
    int dense_m_3d = 16;
    int dense_depth_3d = 3;
    double equivalence_tol = 1e-11;
    double equivalence_tol_3d = 1e-11;
    double dense_tol = 1e-4;
    double dense_tol_3d = 1e-3;
    std::uint32_t seed = 20200531;
    int jobs = 0;
};

/// Oracle suite for a 2D region: orientation, divergence-theorem equivalence of four
/// decompositions, pairwise seed invariance, signed coverage and dense-oracle consistency.
/// Checks after a failed orientation check are reported as not run.
VerifyReport verify_polygon(const CurvedPolygon& region, const VerifyOptions& options = {},
                            const std::optional<DenseRegion2D>& dense = std::nullopt);
VerifyReport verify_polyhedron(const CurvedPolyhedron& region, const VerifyOptions& options = {},
                               const std::optional<DenseRegion3D>& dense = std::nullopt);

/// A point well inside the region: the lattice point with winding number 1 farthest from the boundary.
Vec2 interior_point(const CurvedPolygon& region, int k = 17);
Vec3 interior_point(const CurvedPolyhedron& region, int k = 7);

} // namespace foldquad
