#pragma once

#include "foldquad/cells.hpp"
#include "foldquad/geometry.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace foldquad {

enum class DecompositionKind { JplusCertified, Folded, Unverified };

std::string_view to_string(DecompositionKind kind);

/// Ordered list of cells covering a region in the signed sense: every point of the region is
/// covered once more positively than negatively.
template <class Cell>
struct Decomposition {
    using Point = typename Cell::Point;

    std::vector<Cell> cells;
    std::vector<SignClass> signs;
    std::optional<Point> seed;

    /// Appends a cell together with its sampled sign class.
    void add(Cell cell, int samples_per_dir = 5)
    {
        signs.push_back(classify_cell(cell, samples_per_dir));
        cells.push_back(std::move(cell));
    }

    std::size_t size() const { return cells.size(); }
    bool empty() const { return cells.empty(); }

    std::size_t count(SignKind kind) const
    {
        std::size_t c = 0;
        for (const auto& s : signs) c += s.kind == kind;
        return c;
    }

    DecompositionKind kind() const
    {
        if (count(SignKind::Jminus) + count(SignKind::Folded) > 0) return DecompositionKind::Folded;
        if (empty() || count(SignKind::Unknown) > 0) return DecompositionKind::Unverified;
        return DecompositionKind::JplusCertified;
    }
};

using Decomposition2D = Decomposition<CoonsCell>;
using Decomposition3D = Decomposition<PyramidCell>;

/// Splits off four consecutive edges at a time, closing each quad with a straight chord from
/// its fourth vertex back to the first. A remaining triangle gets a zero-length fourth edge.
/// Yields ceil((n-2)/2) cells for n edges; throws GeometryError for fewer than 3 edges.
Decomposition2D quad_dominant_split(const CurvedPolygon& polygon);

/// One triangle (edge, seed) per polygon edge. Triangles of zero measure are dropped.
/// The seed may lie anywhere, including outside the polygon.
Decomposition2D triangulate_from_seed(const CurvedPolygon& polygon, Vec2 seed);

enum class FaceSplit { QuadDominant, CenterFan };

struct DecomposeOptions {
    FaceSplit face_split = FaceSplit::QuadDominant;
    /// 0 keeps the exact composed map S∘R; q > 0 replaces it by a degree-(q,q) interpolating patch.
    int fit_degree = 0;
    int classify_samples = 5;
};

/// Parameter-space decomposition of a face, composed with the surface. Each returned patch has
/// u and v exchanged relative to the face, so that its normal points into the solid.
std::vector<SurfacePatch> decompose_face(const ParametricFace& face, const DecomposeOptions& options = {});

/// One pyramid per face patch with apex at the seed; zero-measure pyramids are dropped.
Decomposition3D decompose_polyhedron(const CurvedPolyhedron& brep, Vec3 seed, const DecomposeOptions& options = {});

/// Vertex whose decomposition has the fewest nonzero cells; ties go to the lexicographically
/// smallest coordinates.
Vec2 choose_seed_min_cells(const CurvedPolygon& polygon);
Vec3 choose_seed_min_cells(const CurvedPolyhedron& brep, const DecomposeOptions& options = {});

/// Uniform k x k (x k) lattice over a box, corners included, x varying slowest.
std::vector<Vec2> seed_lattice(const Box2& box, int k);
std::vector<Vec3> seed_lattice(const Box3& box, int k);

} // namespace foldquad
